#include "capcall/solver.hpp"

#include "capcall/errors.hpp"

#include <algorithm>
#include <cmath>

namespace capcall {

namespace {

constexpr std::size_t kGrid = 2048;
constexpr double kContinuityTol = 1e-8;
constexpr double kBindingTol = 1e-6;
constexpr double kTruncation = 10.0;

double k_of(const ResolventContext& ctx, double p) {
    const auto& params = ctx.params;
    if (p <= params.K) return 0.0;
    return (p - params.K) / ctx.roots.D * log_power(p, -ctx.roots.beta_star);
}

double power_term(double k, double x, double beta) {
    return k == 0.0 ? 0.0 : k * log_power(x, beta);
}

// v₁'(x) on [c, a) and the magnitude of its terms, from the closed form.
std::pair<double, double> v1_slope(const ResolventContext& ctx, double A, double B, double x) {
    const auto& b1 = ctx.basis(Regime::one);
    const double lam = ctx.params.lambda[0];
    const double t_psi = A * b1.gamma_pos * log_power(x, b1.gamma_pos - 1.0);
    const double t_phi = B * b1.gamma_neg * log_power(x, b1.gamma_neg - 1.0);
    const double t_res = x <= ctx.params.L ? lam / (lam + ctx.params.delta[0]) : 0.0;
    return {t_psi + t_phi + t_res, std::abs(t_psi) + std::abs(t_phi) + std::abs(t_res)};
}

bool nondecreasing_on(const ResolventContext& ctx, double A, double B, double c, double a) {
    if (!(a > c)) return true;
    for (double x : geometric_grid(c, a, kGrid)) {
        const auto [slope, scale] = v1_slope(ctx, A, B, x);
        if (slope < -1e-9 * scale) return false;
    }
    return true;
}

bool close(double lhs, double rhs, double tol) {
    return std::abs(lhs - rhs) <= tol * std::max({std::abs(lhs), std::abs(rhs), 1e-300});
}

// Value functions in the labels of ctx.
double value_in_ctx(const SolvedModel& m, double x, Regime regime) {
    const auto h = payoff_of(m.ctx.params);
    const double beta = m.ctx.roots.beta_star;
    if (regime == Regime::two) {
        if (x < m.c) return m.ctx.roots.D * power_term(m.k, x, beta);
        return h(x);
    }
    if (x < m.c) return power_term(m.k, x, beta);
    if (x < m.a) {
        const auto& b1 = m.ctx.basis(Regime::one);
        return m.A * psi(b1, x) + m.B * phi(b1, x) + resolvent_payoff(m.ctx, Regime::one, x);
    }
    return h(x);
}

double left_of_c_value(const SolvedModel& m, Regime regime) {
    const double v1 = power_term(m.k, m.c, m.ctx.roots.beta_star);
    return regime == Regime::one ? v1 : m.ctx.roots.D * v1;
}

}  // namespace

double SolvedModel::value(double x, Regime regime) const {
    if (!(x > 0)) throw DomainError("x", "price must be positive");
    return value_in_ctx(*this, x, swapped ? other(regime) : regime);
}

double SolvedModel::stop_level(Regime regime) const {
    const Regime in_ctx = swapped ? other(regime) : regime;
    return in_ctx == Regime::one ? a : c;
}

std::vector<Region> SolvedModel::regions() const {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<Region> out;
    if (c > 0) out.push_back({"A4", 0.0, c});
    if (a > c) out.push_back({swapped ? "A3" : "A2", c, a});
    out.push_back({"A1", a, inf});
    return out;
}

LowerThreshold solve_smooth_fit(const ResolventContext& ctx) {
    const double K = ctx.params.K;
    if (K == 0.0) return {0.0, 0.0};
    const double beta = ctx.roots.beta_star;
    const double c = beta * K / (beta - 1.0);
    return {c, k_of(ctx, c)};
}

Feasibility feasibility(const ResolventContext& ctx, double c, double k) {
    const auto& p = ctx.params;
    Feasibility f;
    f.v1_at_c = power_term(k, c, ctx.roots.beta_star);
    f.below_cap = f.v1_at_c <= (p.L - p.K) * (1.0 + 1e-12);
    UpperThreshold upper;
    try {
        upper = threshold_a(ctx, c, k);
    } catch (const GeometryError&) {
        return f;
    }
    f.geometry = true;
    f.monotone = nondecreasing_on(ctx, upper.A, upper.B, c, upper.a);
    return f;
}

bool unconstrained_ok(const ResolventContext& ctx, double c, double k) {
    return c < ctx.params.L && feasibility(ctx, c, k).ok();
}

LowerThreshold solve_binding(const ResolventContext& ctx) {
    const double K = ctx.params.K;
    const double upper = std::min(ctx.params.L, solve_smooth_fit(ctx).c);
    if (!(upper > K)) return {K, 0.0};

    auto feasible = [&ctx](double p) { return feasibility(ctx, p, k_of(ctx, p)).ok(); };
    if (feasible(upper)) return {upper, k_of(ctx, upper)};

    // The feasible set is a lower interval of (K, upper]; find a feasible point.
    double hi = upper;
    double lo = upper;
    bool found = false;
    for (int it = 1; it <= 60 && !found; ++it) {
        lo = K + (upper - K) * std::ldexp(1.0, -it);
        if (feasible(lo)) found = true;
        else hi = lo;
    }
    if (!found) throw InfeasibleError("no threshold in (K, L] passes the feasibility predicate");

    while (hi - lo > kBindingTol) {
        const double mid = 0.5 * (lo + hi);
        if (feasible(mid)) lo = mid;
        else hi = mid;
    }
    return {lo, k_of(ctx, lo)};
}

UpperThreshold threshold_a(const ResolventContext& ctx, double c, double k) {
    const auto& p = ctx.params;
    if (!(c > p.K)) throw GeometryError("threshold c must exceed K");
    const auto curve = h11_curve(ctx);
    const auto& b1 = ctx.basis(Regime::one);

    const double u1_c = power_term(k, c, ctx.roots.beta_star) - resolvent_payoff(ctx, Regime::one, c);
    const Anchor anchor{c, u1_c / phi(b1, c)};
    const double y0 = F(b1, c);

    UpperThreshold out;
    if (c >= p.L) {
        if (anchor.w < curve.at_x(c) - 1e-9 * std::abs(anchor.w))
            throw GeometryError("anchor lies below H11");
        out.a = c;
        out.B = anchor.w;
        return out;
    }

    const XRange search{std::max(c, p.r * p.K / p.delta[0]), p.L};
    if (auto line = tangent_from_point(curve, anchor, search)) {
        out.a = line->x_tangent;
        out.A = line->A;
        out.B = line->B;
        out.tangency = true;
        return out;
    }
    const double yL = F(b1, p.L);
    out.a = p.L;
    out.A = (curve.at_x(p.L) - anchor.w) / (yL - y0);
    out.B = anchor.w - out.A * y0;
    return out;
}

SolvedModel assemble(const ResolventContext& ctx, double c, double k, double a, double A,
                     double B) {
    SolvedModel m;
    m.ctx = ctx;
    m.c = c;
    m.k = k;
    m.a = a;
    m.A = A;
    m.B = B;

    const auto& p = ctx.params;
    const auto h = payoff_of(p);
    std::vector<std::string> failures;

    if (!(c <= a && a <= p.L)) failures.push_back("threshold ordering c <= a <= L");
    if (!(c > p.K || (c == 0.0 && p.K == 0.0))) failures.push_back("threshold c must exceed K");

    if (c > 0 && failures.empty()) {
        const double right1 = value_in_ctx(m, c, Regime::one);
        if (!close(left_of_c_value(m, Regime::one), right1, kContinuityTol))
            failures.push_back("v*(.,1) continuous at c");
        if (!close(left_of_c_value(m, Regime::two), h(c), kContinuityTol))
            failures.push_back("v*(.,2) continuous at c");
        if (a > c) {
            const auto& b1 = ctx.basis(Regime::one);
            const double left = A * psi(b1, a) + B * phi(b1, a) + resolvent_payoff(ctx, Regime::one, a);
            if (!close(left, h(a), kContinuityTol)) failures.push_back("v*(.,1) continuous at a");
        }
    }

    if (failures.empty()) {
        const double x_lo = 1e-3 * (c > 0 ? std::min(c, p.K) : p.L);
        const double tol = 1e-9 * (p.L - p.K);
        for (double x : geometric_grid(x_lo, kTruncation * p.L, kGrid)) {
            for (Regime i : {Regime::one, Regime::two}) {
                if (value_in_ctx(m, x, i) < h(x) - tol) {
                    failures.push_back("v*(x," + std::to_string(number(i)) + ") >= h(x) at x=" +
                                       std::to_string(x));
                    break;
                }
            }
            if (!failures.empty()) break;
        }
    }

    if (!failures.empty()) {
        std::string msg = "assembled value functions violate:";
        for (const auto& f : failures) msg += " [" + f + "]";
        throw InvariantError(msg);
    }
    return m;
}

SolvedModel solve(const ModelParams& params) {
    // Label the regimes so that regime one has the wider continuation
    // region; the alternative labelling has D' = 1/D.
    const bool swap = quartic_roots(params).D > 1.0 + 1e-9;
    const auto ctx = make_context(swap ? params.swapped() : params);

    const auto smooth = solve_smooth_fit(ctx);
    Feasibility unconstrained;
    if (smooth.c > ctx.params.K) unconstrained = feasibility(ctx, smooth.c, smooth.k);

    LowerThreshold lower = smooth;
    bool binding = false;
    if (!(smooth.c < ctx.params.L && unconstrained.ok())) {
        lower = solve_binding(ctx);
        binding = true;
    }

    UpperThreshold upper;
    if (lower.c > 0) upper = threshold_a(ctx, lower.c, lower.k);
    if (upper.a > lower.c && !u1_resolvent_finite(ctx))
        throw FinitenessError("j2(gamma_1,1) and j2(gamma_1,2) must be positive when c < a");

    auto model = assemble(ctx, lower.c, lower.k, upper.a, upper.A, upper.B);
    model.swapped = swap;
    model.binding = binding;
    model.tangency = upper.tangency;
    model.c_unconstrained = smooth.c;
    model.k_unconstrained = smooth.k;
    model.unconstrained = unconstrained;
    return model;
}

double price(const SolvedModel& model, double x, Regime regime) { return model.value(x, regime); }

bool ConditionResult::pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const auto& named) { return named.second.pass; });
}

bool SufficiencyReport::all_passed() const {
    return std::all_of(conditions.begin(), conditions.end(),
                       [](const auto& cond) { return cond.pass(); });
}

namespace {

GridCheck single_point(double x, double y, double value, double tol) {
    GridCheck check;
    check.n_points = 1;
    check.tolerance = tol;
    check.worst = {x, y, value};
    if (!(std::abs(value) <= tol)) {
        check.pass = false;
        check.violations.push_back(check.worst);
    }
    return check;
}

GridCheck vacuous() {
    GridCheck check;
    check.n_points = 0;
    return check;
}

// h⁺/f along a geometric sequence must decrease to 0.
GridCheck vanishing_ratio(const CappedCallPayoff& h, const FundamentalBasis& basis, double start,
                          double factor, bool use_phi) {
    GridCheck check;
    double first = 0.0;
    double prev = std::numeric_limits<double>::infinity();
    double x = start;
    for (int i = 0; i <= 12; ++i, x *= factor) {
        const double ratio = h(x) / (use_phi ? phi(basis, x) : psi(basis, x));
        if (i == 0) first = ratio;
        ++check.n_points;
        check.worst = {x, use_phi ? 0.0 : F(basis, x), ratio};
        if (ratio > prev * (1 + 1e-12)) {
            check.pass = false;
            check.violations.push_back(check.worst);
        }
        prev = ratio;
    }
    check.tolerance = 1e-6 * first;
    if (check.worst.value > check.tolerance) {
        check.pass = false;
        check.violations.push_back(check.worst);
    }
    return check;
}

}  // namespace

SufficiencyReport verify(const SolvedModel& model) {
    const auto& ctx = model.ctx;
    const auto& p = ctx.params;
    const auto h = payoff_of(p);
    const double c = model.c;
    const double a = model.a;
    const double x_max = kTruncation * p.L;
    const double x_tiny = 1e-4 * (c > 0 ? c : p.L);

    SufficiencyReport report;
    report.x_max = x_max;

    ConditionResult s1{"S-1", "H12 <= 0 on (0, F1(c))", {}};
    ConditionResult s2{"S-2", "H23 <= 0 on (0, F2(c)] and H23(F2(c)) = 0", {}};
    if (c > 0) {
        s1.checks.emplace_back("H12 majorized by 0",
                               majorized_by_zero(h12_curve(ctx, model.k), {x_tiny, c}, kGrid));
        const auto h23 = h23_curve(ctx, model.k);
        auto below = majorized_by_zero(h23, {x_tiny, c}, kGrid);
        const double scale = std::max(std::abs(below.worst.value), [&] {
            double m = 0.0;
            for (double x : geometric_grid(x_tiny, c, kGrid)) m = std::max(m, std::abs(h23.at_x(x)));
            return m;
        }());
        s2.checks.emplace_back("H23 majorized by 0", below);
        s2.checks.emplace_back("H23 touches 0 at F2(c)",
                               single_point(c, h23.y_of(c), h23.at_x(c), 1e-9 * scale));
    } else {
        s1.checks.emplace_back("A4 empty", vacuous());
        s2.checks.emplace_back("A4 empty", vacuous());
    }

    ConditionResult s3{"S-3", "W1 = Ay+B majorizes H11 on [F1(c), F1(a)], touching at F1(a); "
                              "H11 concave on [F1(a), F1(x_max)]", {}};
    const auto h11 = h11_curve(ctx);
    if (a > c) {
        const auto& b1 = ctx.basis(Regime::one);
        TransformedCurve gap = h11;
        gap.name = "H11-W1";
        gap.numerator = [ctx, h, A = model.A, B = model.B, b1](double x) {
            return h(x) - resolvent_payoff(ctx, Regime::one, x) - (A * psi(b1, x) + B * phi(b1, x));
        };
        auto below = majorized_by_zero(gap, {c, a}, kGrid);
        const double line_scale = std::max(std::abs(model.A * F(b1, a) + model.B), std::abs(model.B));
        s3.checks.emplace_back("W1 >= H11", below);
        s3.checks.emplace_back("W1 touches H11 at F1(a)",
                               single_point(a, F(b1, a), gap.at_x(a), 1e-9 * line_scale));
        const double w_lo = std::min(model.A * F(b1, c) + model.B, model.A * F(b1, a) + model.B);
        s3.checks.emplace_back("W1 nonnegative",
                               single_point(a, F(b1, a), std::min(w_lo, 0.0), 0.0));
    }
    const double x_start = std::max(a, p.K > 0 ? p.K : x_tiny);
    const XRange beyond_a{a > p.K ? a : std::nextafter(x_start, x_max), x_max};
    s3.checks.emplace_back("H11 concave beyond F1(a)", concave_on(h11, beyond_a, kGrid));

    ConditionResult s4{"S-4", "H21 concave on [F2(a), F2(x_max)]; H22 concave on [F2(c), F2(a))", {}};
    s4.checks.emplace_back("H21 concave beyond F2(a)", concave_on(h21_curve(ctx), beyond_a, kGrid));
    if (a > c)
        s4.checks.emplace_back("H22 concave on [F2(c), F2(a))",
                               concave_on(h22_curve(ctx, model.A, model.B), {c, a}, kGrid));

    ConditionResult fin{"finiteness", "h/phi -> 0 as x -> 0 and h/psi -> 0 as x -> inf", {}};
    const double x_small = p.K > 0 ? 0.5 * p.K : 1e-3 * p.L;
    for (Regime i : {Regime::one, Regime::two}) {
        const auto& basis = ctx.basis(i);
        const auto tag = std::to_string(number(i));
        fin.checks.emplace_back("h/phi_" + tag + " at 0", vanishing_ratio(h, basis, x_small, 0.1, true));
        fin.checks.emplace_back("h/psi_" + tag + " at inf", vanishing_ratio(h, basis, x_max, 10.0, false));
    }

    report.conditions = {s1, s2, s3, s4, fin};
    return report;
}

}  // namespace capcall
