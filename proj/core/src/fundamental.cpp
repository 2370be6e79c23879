#include "capcall/fundamental.hpp"

#include "capcall/errors.hpp"

#include <cmath>

namespace capcall {

FundamentalBasis gamma_roots(const ModelParams& params, Regime regime) {
    const double s2 = params.sigma_of(regime) * params.sigma_of(regime);
    const double a = 0.5 * s2;
    const double b = params.r - params.delta_of(regime) - 0.5 * s2;
    const double c = -(params.r + params.lambda_of(regime));

    // c < 0 < a, so the discriminant is strictly positive.
    const double disc = std::sqrt(b * b - 4.0 * a * c);
    const double q = -0.5 * (b + std::copysign(disc, b));
    const double big = q / a;
    const double small = c / q;

    FundamentalBasis basis;
    basis.gamma_neg = std::min(big, small);
    basis.gamma_pos = std::max(big, small);
    basis.theta = basis.gamma_pos - basis.gamma_neg;
    return basis;
}

double log_power(double x, double e) { return std::exp(e * std::log(x)); }

double psi(const FundamentalBasis& basis, double x) {
    if (!(x > 0)) throw DomainError("x", "psi requires x>0");
    return log_power(x, basis.gamma_pos);
}

double phi(const FundamentalBasis& basis, double x) {
    if (!(x > 0)) throw DomainError("x", "phi requires x>0");
    return log_power(x, basis.gamma_neg);
}

double F(const FundamentalBasis& basis, double x) {
    if (!(x > 0)) throw DomainError("x", "F requires x>0");
    return log_power(x, basis.theta);
}

double F_inv(const FundamentalBasis& basis, double y) {
    if (!(y > 0)) throw DomainError("y", "F_inv requires y>0");
    return log_power(y, 1.0 / basis.theta);
}

}  // namespace capcall
