#pragma once

#include "capcall/model.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <vector>

namespace capcall {

struct SolvedModel;

/// Stop the first time X ≥ level of the current regime.
struct ThresholdPolicy {
    std::array<double, 2> stop_level{};  ///< indexed by index(Regime)

    double level(Regime i) const { return stop_level[index(i)]; }
};

/// The solved model's stopping rule in the input's regime labels.
ThresholdPolicy policy_from(const SolvedModel& model);

struct McEstimate {
    double mean = 0.0;
    double stderr = 0.0;
    std::size_t n_paths = 0;
    double truncation_bias_bound = 0.0;  ///< e^{−rT}(L−K)
};

/// Per-path generator: xoshiro256** seeded by splitmix64 from (seed, path),
/// so every path has its own reproducible stream.
class PathRng {
public:
    using result_type = std::uint64_t;

    PathRng(std::uint64_t seed, std::uint64_t path);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()();

    /// Uniform on (0, 1).
    double uniform();
    double normal();
    double exponential(double rate);

private:
    std::array<std::uint64_t, 4> s_{};
};

/// Tuning of the path simulation.
struct McSettings {
    double dt = 1e-3;       ///< resolution of the crossing time
    unsigned workers = 0;   ///< 0: hardware concurrency
};

/// Discounted payoff of `policy` started at (x0, regime0), estimated from
/// n_paths paths.
///
/// Between regime switches X is lognormal and sampled exactly at the switch
/// times. A crossing of the current level inside a sojourn is detected from
/// the Brownian-bridge maximum of log X, and its time is located by bridge
/// bisection to within settings.dt. Paths alive at T = ln((L−K)/eps)/r pay 0.
/// Deterministic for a fixed seed and independent of the worker count.
/// Throws DomainError on invalid inputs.
McEstimate simulate_value(const ModelParams& params, double x0, Regime regime0,
                          const ThresholdPolicy& policy, std::size_t n_paths, std::uint64_t seed,
                          double eps, const McSettings& settings = {});

struct SweepRow {
    double level = 0.0;
    McEstimate estimate;
};

/// One estimate per candidate level of `target`, the other regime keeping its
/// level from `base`. Candidates share the path streams (common random
/// numbers). Throws DomainError unless levels are sorted within (K, L].
std::vector<SweepRow> policy_sweep(const ModelParams& params, double x0, Regime regime0,
                                   const ThresholdPolicy& base, Regime target,
                                   const std::vector<double>& levels, std::size_t n_paths,
                                   std::uint64_t seed, double eps, const McSettings& settings = {});

/// CSV with header level,mean,stderr,n_paths and 17 significant digits.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace capcall
