#include "capcall/coupled_roots.hpp"

#include "capcall/errors.hpp"
#include "capcall/fundamental.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace capcall {

namespace {

constexpr int kBisectionSteps = 60;

double bisect(const ModelParams& params, double lo, double hi) {
    double f_lo = quartic(params, lo);
    for (int it = 0; it < kBisectionSteps; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = quartic(params, mid);
        if (f_mid == 0.0) return mid;
        if ((f_mid > 0) == (f_lo > 0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Walks away from `from` in direction `step` until f turns positive.
double outer_point(const ModelParams& params, double from, double step) {
    double x = from + step;
    for (int it = 0; it < 200 && !(quartic(params, x) > 0); ++it) {
        step *= 2.0;
        x = from + step;
    }
    return x;
}

}  // namespace

double j(const ModelParams& params, Regime regime, double beta) {
    const double s2 = params.sigma_of(regime) * params.sigma_of(regime);
    const double drift = params.r - params.delta_of(regime) - 0.5 * s2;
    return params.r + params.lambda_of(regime) - drift * beta - 0.5 * s2 * beta * beta;
}

double quartic(const ModelParams& params, double beta) {
    return j(params, Regime::one, beta) * j(params, Regime::two, beta) -
           params.lambda[0] * params.lambda[1];
}

CoupledRoots quartic_roots(const ModelParams& params) {
    const auto b1 = gamma_roots(params, Regime::one);
    const auto b2 = gamma_roots(params, Regime::two);

    const double neg_lo = std::min(b1.gamma_neg, b2.gamma_neg);
    const double neg_hi = std::max(b1.gamma_neg, b2.gamma_neg);
    const double pos_lo = std::min(b1.gamma_pos, b2.gamma_pos);
    const double pos_hi = std::max(b1.gamma_pos, b2.gamma_pos);

    std::vector<double> points = {outer_point(params, neg_lo, -1.0), neg_lo, neg_hi, 0.0,
                                  pos_lo, pos_hi, outer_point(params, pos_hi, 1.0)};

    std::vector<double> roots;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const double lo = points[i];
        const double hi = points[i + 1];
        if (!(hi > lo)) continue;
        const double f_lo = quartic(params, lo);
        const double f_hi = quartic(params, hi);
        if (f_lo == 0.0) {
            roots.push_back(lo);
        } else if ((f_lo > 0) != (f_hi > 0) && f_hi != 0.0) {
            roots.push_back(bisect(params, lo, hi));
        }
    }
    if (roots.size() != 4)
        throw RootStructureError("expected 4 distinct real roots of j1*j2=lambda1*lambda2, found " +
                                 std::to_string(roots.size()));

    CoupledRoots out;
    std::copy(roots.begin(), roots.end(), out.all_roots.begin());
    std::sort(out.all_roots.begin(), out.all_roots.end());

    int n_neg = 0;
    int n_pos = 0;
    for (double beta : out.all_roots) {
        if (!(j(params, Regime::one, beta) > 0 && j(params, Regime::two, beta) > 0)) continue;
        if (beta < 0) {
            out.beta_neg = beta;
            ++n_neg;
        } else {
            out.beta_pos = beta;
            ++n_pos;
        }
    }
    if (n_neg != 1 || n_pos != 1)
        throw RootStructureError("admissible roots are not one negative and one positive");

    out.beta_star = out.beta_pos;
    if (!(out.beta_star > 1.0))
        throw RootStructureError("beta* = " + std::to_string(out.beta_star) + " is not above 1");
    out.D = params.lambda[1] / j(params, Regime::two, out.beta_star);
    return out;
}

}  // namespace capcall
