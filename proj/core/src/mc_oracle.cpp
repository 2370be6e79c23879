#include "capcall/mc_oracle.hpp"

#include "capcall/errors.hpp"
#include "capcall/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

namespace capcall {

namespace {

constexpr std::size_t kChunk = 4096;

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

/// Welford accumulator with Chan's pairwise merge.
struct Moments {
    std::size_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double v) {
        ++n;
        const double d = v - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (v - mean);
    }

    void merge(const Moments& o) {
        if (o.n == 0) return;
        if (n == 0) {
            *this = o;
            return;
        }
        const double na = static_cast<double>(n);
        const double nb = static_cast<double>(o.n);
        const double d = o.mean - mean;
        const double total = na + nb;
        mean += d * nb / total;
        m2 += o.m2 + d * d * na * nb / total;
        n += o.n;
    }
};

struct Dynamics {
    std::array<double, 2> mu{};     // drift of log X
    std::array<double, 2> sigma{};
    std::array<double, 2> lambda{};
    double r = 0.0;
    double horizon = 0.0;
    double dt = 1e-3;
    CappedCallPayoff h;
};

// P(max of a Brownian bridge from z0 to z1 over time t exceeds m), z0, z1 < m.
double bridge_cross_prob(double z0, double z1, double m, double var) {
    return std::exp(-2.0 * (m - z0) * (m - z1) / var);
}

// A crossing of m is known to occur on (t0, t0 + width) with endpoints z0 and
// z1 (z0 < m). Returns an approximation of the first crossing time with error
// at most dt/2, by sampling bridge midpoints conditioned on the crossing.
double locate_crossing(PathRng& rng, double t0, double width, double z0, double z1, double m,
                       double sigma, double dt) {
    while (width > dt) {
        const double half = 0.5 * width;
        const double var_half = sigma * sigma * half;
        for (;;) {
            const double zm = 0.5 * (z0 + z1) + std::sqrt(0.5 * var_half) * rng.normal();
            if (zm >= m || rng.uniform() < bridge_cross_prob(z0, zm, m, var_half)) {
                z1 = zm;
                break;
            }
            if (z1 >= m || rng.uniform() < bridge_cross_prob(zm, z1, m, var_half)) {
                t0 += half;
                z0 = zm;
                break;
            }
        }
        width = half;
    }
    return t0 + 0.5 * width;
}

double simulate_path(const Dynamics& dyn, const ThresholdPolicy& policy, double x0, Regime regime0,
                     PathRng& rng) {
    if (x0 >= policy.level(regime0)) return dyn.h(x0);
    double t = 0.0;
    double z = std::log(x0);
    std::size_t i = index(regime0);
    for (;;) {
        const double level = policy.stop_level[i];
        if (std::exp(z) >= level) return std::exp(-dyn.r * t) * dyn.h(std::exp(z));

        const double sojourn = rng.exponential(dyn.lambda[i]);
        const double step = std::min(sojourn, dyn.horizon - t);
        const double var = dyn.sigma[i] * dyn.sigma[i] * step;
        const double z_next = z + dyn.mu[i] * step + std::sqrt(var) * rng.normal();
        const double m = std::log(level);
        const double u = rng.uniform();
        if (z_next >= m || u < bridge_cross_prob(z, z_next, m, var)) {
            const double tau = locate_crossing(rng, t, step, z, z_next, m, dyn.sigma[i], dyn.dt);
            return std::exp(-dyn.r * tau) * dyn.h(level);
        }
        t += step;
        z = z_next;
        if (t >= dyn.horizon) return 0.0;
        i = 1 - i;
    }
}

void check_inputs(const ModelParams& params, double x0, const ThresholdPolicy& policy,
                  std::size_t n_paths, double eps, const McSettings& settings) {
    if (!(x0 > 0) || !std::isfinite(x0)) throw DomainError("x0", "must be positive");
    for (double level : policy.stop_level)
        if (!(level > 0) || !std::isfinite(level)) throw DomainError("policy", "levels must be positive");
    if (n_paths == 0) throw DomainError("n_paths", "must be positive");
    if (!(eps > 0)) throw DomainError("eps", "must be positive");
    if (!(settings.dt > 0)) throw DomainError("dt", "must be positive");
    if (!(params.L > params.K)) throw DomainError("L", "must exceed K");
}

Dynamics make_dynamics(const ModelParams& params, double eps, double dt) {
    Dynamics dyn;
    for (std::size_t i = 0; i < 2; ++i) {
        dyn.mu[i] = params.r - params.delta[i] - 0.5 * params.sigma[i] * params.sigma[i];
        dyn.sigma[i] = params.sigma[i];
        dyn.lambda[i] = params.lambda[i];
    }
    dyn.r = params.r;
    dyn.dt = dt;
    dyn.h = payoff_of(params);
    // Slightly beyond ln((L−K)/eps)/r so the bound is strictly below eps.
    dyn.horizon = std::max(0.0, std::log((params.L - params.K) / eps) / params.r) * (1.0 + 1e-12);
    return dyn;
}

// Runs chunk-wise over paths; each policy gets the same path streams.
std::vector<Moments> run_paths(const Dynamics& dyn, const std::vector<ThresholdPolicy>& policies,
                               double x0, Regime regime0, std::size_t n_paths, std::uint64_t seed,
                               unsigned workers) {
    const std::size_t n_chunks = (n_paths + kChunk - 1) / kChunk;
    std::vector<std::vector<Moments>> per_chunk(n_chunks, std::vector<Moments>(policies.size()));

    auto work = [&](std::size_t first_chunk, std::size_t stride) {
        for (std::size_t c = first_chunk; c < n_chunks; c += stride) {
            const std::size_t end = std::min(n_paths, (c + 1) * kChunk);
            for (std::size_t path = c * kChunk; path < end; ++path) {
                for (std::size_t p = 0; p < policies.size(); ++p) {
                    PathRng rng(seed, path);
                    per_chunk[c][p].add(simulate_path(dyn, policies[p], x0, regime0, rng));
                }
            }
        }
    };

    unsigned n_workers = workers ? workers : std::max(1u, std::thread::hardware_concurrency());
    n_workers = static_cast<unsigned>(std::min<std::size_t>(n_workers, n_chunks));
    if (n_workers <= 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < n_workers; ++w) threads.emplace_back(work, w, n_workers);
        for (auto& th : threads) th.join();
    }

    std::vector<Moments> total(policies.size());
    for (const auto& chunk : per_chunk)
        for (std::size_t p = 0; p < policies.size(); ++p) total[p].merge(chunk[p]);
    return total;
}

McEstimate to_estimate(const Moments& m, const Dynamics& dyn, const ModelParams& params) {
    McEstimate est;
    est.mean = m.mean;
    est.n_paths = m.n;
    est.stderr = m.n > 1 ? std::sqrt(m.m2 / static_cast<double>(m.n - 1) / static_cast<double>(m.n)) : 0.0;
    est.truncation_bias_bound = std::exp(-params.r * dyn.horizon) * (params.L - params.K);
    return est;
}

}  // namespace

PathRng::PathRng(std::uint64_t seed, std::uint64_t path) {
    std::uint64_t state = seed ^ (path * 0xd1b54a32d192ed03ULL);
    splitmix64(state);
    for (auto& word : s_) word = splitmix64(state);
}

PathRng::result_type PathRng::operator()() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double PathRng::uniform() { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

double PathRng::normal() {
    // Marsaglia polar method; the spare value is discarded so every draw
    // consumes a self-contained part of the stream.
    for (;;) {
        const double u = 2.0 * uniform() - 1.0;
        const double v = 2.0 * uniform() - 1.0;
        const double s = u * u + v * v;
        if (s < 1.0 && s > 0.0) return u * std::sqrt(-2.0 * std::log(s) / s);
    }
}

double PathRng::exponential(double rate) { return -std::log(uniform()) / rate; }

ThresholdPolicy policy_from(const SolvedModel& model) {
    ThresholdPolicy policy;
    for (Regime i : {Regime::one, Regime::two}) policy.stop_level[index(i)] = model.stop_level(i);
    return policy;
}

McEstimate simulate_value(const ModelParams& params, double x0, Regime regime0,
                          const ThresholdPolicy& policy, std::size_t n_paths, std::uint64_t seed,
                          double eps, const McSettings& settings) {
    check_inputs(params, x0, policy, n_paths, eps, settings);
    const auto dyn = make_dynamics(params, eps, settings.dt);
    const auto moments = run_paths(dyn, {policy}, x0, regime0, n_paths, seed, settings.workers);
    return to_estimate(moments.front(), dyn, params);
}

std::vector<SweepRow> policy_sweep(const ModelParams& params, double x0, Regime regime0,
                                   const ThresholdPolicy& base, Regime target,
                                   const std::vector<double>& levels, std::size_t n_paths,
                                   std::uint64_t seed, double eps, const McSettings& settings) {
    check_inputs(params, x0, base, n_paths, eps, settings);
    if (levels.empty()) throw DomainError("levels", "must not be empty");
    if (!std::is_sorted(levels.begin(), levels.end()))
        throw DomainError("levels", "must be sorted");
    if (!(levels.front() > params.K) || !(levels.back() <= params.L))
        throw DomainError("levels", "must lie in (K, L]");

    std::vector<ThresholdPolicy> policies;
    for (double level : levels) {
        ThresholdPolicy p = base;
        p.stop_level[index(target)] = level;
        policies.push_back(p);
    }
    const auto dyn = make_dynamics(params, eps, settings.dt);
    const auto moments = run_paths(dyn, policies, x0, regime0, n_paths, seed, settings.workers);

    std::vector<SweepRow> rows;
    for (std::size_t p = 0; p < levels.size(); ++p)
        rows.push_back({levels[p], to_estimate(moments[p], dyn, params)});
    return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "level,mean,stderr,n_paths\n";
    char buf[128];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%zu\n", row.level, row.estimate.mean,
                      row.estimate.stderr, row.estimate.n_paths);
        out << buf;
    }
}

}  // namespace capcall
