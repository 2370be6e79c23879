#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>

namespace capcall {

/// Market regime of the two-state Markov chain. Reported 1-based.
enum class Regime { one = 1, two = 2 };

constexpr std::size_t index(Regime regime) noexcept {
    return regime == Regime::one ? 0 : 1;
}

constexpr Regime other(Regime regime) noexcept {
    return regime == Regime::one ? Regime::two : Regime::one;
}

constexpr int number(Regime regime) noexcept { return static_cast<int>(regime); }

/// Regime from a 1-based number; throws DomainError otherwise.
Regime regime_from_number(int n);

/// Validated market, regime and payoff parameters.
///
/// The discount rate of the optimal stopping problem is r itself; no separate
/// discount symbol is carried. Per-regime arrays are indexed by index(Regime).
struct ModelParams {
    double r = 0.0;
    std::array<double, 2> delta{};
    std::array<double, 2> sigma{};
    std::array<double, 2> lambda{};
    double K = 0.0;
    double L = 0.0;

    double delta_of(Regime i) const { return delta[index(i)]; }
    double sigma_of(Regime i) const { return sigma[index(i)]; }
    double lambda_of(Regime i) const { return lambda[index(i)]; }

    /// Same market with the two regime labels exchanged.
    ModelParams swapped() const;

    bool operator==(const ModelParams&) const = default;
};

/// h(x) = (x ∧ L − K)⁺.
struct CappedCallPayoff {
    double K = 0.0;
    double L = 0.0;

    double operator()(double x) const noexcept;
};

CappedCallPayoff payoff_of(const ModelParams& params) noexcept;

/// Raw parameters keyed by the config names:
/// r, delta1, delta2, lambda1, lambda2, sigma1, sigma2, K, L.
using ParameterMap = std::map<std::string, double, std::less<>>;

/// Checks every invariant of ModelParams; throws DomainError naming the
/// offending field (delta, sigma, lambda, r, K, L) on the first violation.
ModelParams validate(const ParameterMap& raw);

/// Capped-call payoff at x > 0; throws DomainError for x ≤ 0.
double payoff(const ModelParams& params, double x);

/// Flat key=value config text. Blank lines and lines starting with '#' are
/// skipped. Throws ConfigError on syntax errors, non-decimal values,
/// duplicate or unknown keys.
ParameterMap parse_config(std::string_view text);

/// Reads and parses a config file; throws ConfigError if unreadable.
ParameterMap read_config_file(const std::string& path);

ParameterMap to_map(const ModelParams& params);

/// Config text for params; values printed with 17 significant digits so that
/// validate(parse_config(serialize(p))) == p.
std::string serialize(const ModelParams& params);

}  // namespace capcall
