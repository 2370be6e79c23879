#pragma once

#include <cmath>
#include <functional>
#include <random>

namespace oracle {

struct QuadratureEstimate {
    double mean = 0.0;
    double stderr = 0.0;
};

/// E^x[∫₀^T e^{−qt} f(X_t) dt] for dX = μX dt + σX dB by trapezoid on a grid
/// of step dt with exact lognormal steps; T is chosen with e^{−qT} < 1e−6.
inline QuadratureEstimate gbm_resolvent(const std::function<double(double)>& f, double x,
                                        double mu, double sigma, double q, std::size_t n_paths,
                                        unsigned seed, double dt = 1e-3) {
    const double horizon = std::log(1e6) / q * 1.01;
    const auto n_steps = static_cast<std::size_t>(std::ceil(horizon / dt));
    const double drift = (mu - 0.5 * sigma * sigma) * dt;
    const double vol = sigma * std::sqrt(dt);
    const double decay = std::exp(-q * dt);

    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal;
    double sum = 0.0;
    double sum2 = 0.0;
    for (std::size_t p = 0; p < n_paths; ++p) {
        double logx = std::log(x);
        double disc = 1.0;
        double prev = f(x);
        double integral = 0.0;
        for (std::size_t s = 0; s < n_steps; ++s) {
            logx += drift + vol * normal(gen);
            disc *= decay;
            const double next = disc * f(std::exp(logx));
            integral += 0.5 * (prev + next) * dt;
            prev = next;
        }
        sum += integral;
        sum2 += integral * integral;
    }
    const double n = static_cast<double>(n_paths);
    QuadratureEstimate est;
    est.mean = sum / n;
    est.stderr = std::sqrt(std::max(0.0, sum2 / n - est.mean * est.mean) / (n - 1.0));
    return est;
}

}  // namespace oracle
