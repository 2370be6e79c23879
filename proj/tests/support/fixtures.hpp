#pragma once

#include "capcall/model.hpp"

#include <random>

namespace fixtures {

inline capcall::ParameterMap reference_map(double L) {
    return {{"r", 0.3},      {"delta1", 0.2}, {"delta2", 0.225}, {"lambda1", 1.0}, {"lambda2", 1.0},
            {"sigma1", 0.5}, {"sigma2", 0.3}, {"K", 5.0},        {"L", L}};
}

/// The two-regime market with cap 15 (interior tangency) or 11.3 (binding).
inline capcall::ModelParams reference(double L = 15.0) {
    return capcall::validate(reference_map(L));
}

/// Valid parameters with r > δᵢ > 0 drawn from moderate ranges.
inline capcall::ModelParams random_params(std::mt19937_64& gen) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r = 0.05 + 0.45 * u(gen);
    capcall::ParameterMap m;
    m["r"] = r;
    m["delta1"] = r * (0.1 + 0.85 * u(gen));
    m["delta2"] = r * (0.1 + 0.85 * u(gen));
    m["sigma1"] = 0.1 + 0.5 * u(gen);
    m["sigma2"] = 0.1 + 0.5 * u(gen);
    m["lambda1"] = 0.2 + 2.8 * u(gen);
    m["lambda2"] = 0.2 + 2.8 * u(gen);
    m["K"] = 1.0 + 9.0 * u(gen);
    m["L"] = m["K"] * (1.5 + 2.5 * u(gen));
    return capcall::validate(m);
}

/// Identical regimes: r > δ > 0.
inline capcall::ModelParams random_identical(std::mt19937_64& gen) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r = 0.05 + 0.45 * u(gen);
    const double delta = r * (0.1 + 0.85 * u(gen));
    const double sigma = 0.1 + 0.5 * u(gen);
    const double lambda = 0.2 + 2.8 * u(gen);
    const double K = 1.0 + 9.0 * u(gen);
    return capcall::validate({{"r", r},
                              {"delta1", delta},
                              {"delta2", delta},
                              {"sigma1", sigma},
                              {"sigma2", sigma},
                              {"lambda1", lambda},
                              {"lambda2", lambda},
                              {"K", K},
                              {"L", K * (1.2 + 3.0 * u(gen))}});
}

}  // namespace fixtures
