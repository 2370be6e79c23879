#include "capcall/mc_oracle.hpp"
#include "capcall/solver.hpp"

#include <benchmark/benchmark.h>

using namespace capcall;

namespace {

ModelParams market(double L) {
    return validate({{"r", 0.3}, {"delta1", 0.2}, {"delta2", 0.225}, {"lambda1", 1.0},
                     {"lambda2", 1.0}, {"sigma1", 0.5}, {"sigma2", 0.3}, {"K", 5.0}, {"L", L}});
}

void BM_QuarticRoots(benchmark::State& state) {
    const auto p = market(15.0);
    for (auto _ : state) benchmark::DoNotOptimize(quartic_roots(p));
}
BENCHMARK(BM_QuarticRoots);

void BM_SolveTangency(benchmark::State& state) {
    const auto p = market(15.0);
    for (auto _ : state) benchmark::DoNotOptimize(solve(p));
}
BENCHMARK(BM_SolveTangency)->Unit(benchmark::kMicrosecond);

void BM_SolveBinding(benchmark::State& state) {
    const auto p = market(11.3);
    for (auto _ : state) benchmark::DoNotOptimize(solve(p));
}
BENCHMARK(BM_SolveBinding)->Unit(benchmark::kMicrosecond);

void BM_Verify(benchmark::State& state) {
    const auto model = solve(market(15.0));
    for (auto _ : state) benchmark::DoNotOptimize(verify(model));
}
BENCHMARK(BM_Verify)->Unit(benchmark::kMicrosecond);

void BM_Price(benchmark::State& state) {
    const auto model = solve(market(15.0));
    double x = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(model.value(x, Regime::one));
        x = x < 20.0 ? x + 0.01 : 1.0;
    }
}
BENCHMARK(BM_Price);

void BM_SimulateValue(benchmark::State& state) {
    const auto p = market(15.0);
    const auto policy = policy_from(solve(p));
    McSettings settings;
    settings.workers = 1;
    const auto paths = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(simulate_value(p, 8.0, Regime::one, policy, paths, 1, 1e-4, settings));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateValue)->Arg(4096)->Arg(32768)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
