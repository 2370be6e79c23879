#include "capcall/resolvents.hpp"

#include "capcall/errors.hpp"

namespace capcall {

ResolventContext make_context(const ModelParams& params) {
    ResolventContext ctx;
    ctx.params = params;
    ctx.bases = {gamma_roots(params, Regime::one), gamma_roots(params, Regime::two)};
    ctx.roots = quartic_roots(params);
    return ctx;
}

bool u1_resolvent_finite(const ResolventContext& ctx) {
    const auto& b1 = ctx.basis(Regime::one);
    return j(ctx.params, Regime::two, b1.gamma_pos) > 0 &&
           j(ctx.params, Regime::two, b1.gamma_neg) > 0;
}

double resolvent_payoff(const ResolventContext& ctx, Regime i, double x) {
    const auto& p = ctx.params;
    if (!(x > p.K)) throw DomainError("x", "resolvent of the payoff is defined only for x>K");
    const double lam = p.lambda_of(i);
    if (x <= p.L) return lam * (x / (lam + p.delta_of(i)) - p.K / (lam + p.r));
    return lam / (lam + p.r) * (p.L - p.K);
}

double resolvent_power(const ResolventContext& ctx, Regime i, double k, double beta, double x) {
    const double ji = j(ctx.params, i, beta);
    if (!(ji > 0))
        throw FinitenessError("resolvent of x^beta diverges: j_" + std::to_string(number(i)) +
                              "(beta) <= 0");
    if (k == 0.0) return 0.0;
    return ctx.params.lambda_of(i) / ji * k * log_power(x, beta);
}

double resolvent_u1(const ResolventContext& ctx, double A, double B, double x) {
    const auto& b1 = ctx.basis(Regime::one);
    const double lam2 = ctx.params.lambda[1];
    auto term = [&](double weight, double gamma, double basis_value) {
        if (weight == 0.0) return 0.0;
        const double j2 = j(ctx.params, Regime::two, gamma);
        if (!(j2 > 0)) throw FinitenessError("resolvent of u1 diverges: j_2(gamma_1) <= 0");
        return lam2 * weight * basis_value / j2;
    };
    return term(A, b1.gamma_pos, psi(b1, x)) + term(B, b1.gamma_neg, phi(b1, x));
}

double double_resolvent_payoff(const ResolventContext& ctx, double x) {
    const auto& p = ctx.params;
    if (!(x > p.K)) throw DomainError("x", "resolvent of the payoff is defined only for x>K");
    const double l1 = p.lambda[0];
    const double l2 = p.lambda[1];
    if (x <= p.L)
        return l2 * l1 *
               (x / ((l2 + p.delta[1]) * (l1 + p.delta[0])) - p.K / ((l2 + p.r) * (l1 + p.r)));
    return l2 * l1 / ((l2 + p.r) * (l1 + p.r)) * (p.L - p.K);
}

}  // namespace capcall
