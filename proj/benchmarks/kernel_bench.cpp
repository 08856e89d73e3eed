#include <cstdint>
#include <utility>

#include <benchmark/benchmark.h>

#include "pdsearch/analytic.hpp"
#include "pdsearch/grover.hpp"
#include "pdsearch/state_vector.hpp"
#include "pdsearch/unknown_m.hpp"

namespace {

using namespace pdsearch;

void BM_WalshInit(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_walsh_init(new_register(n)));
    }
    state.SetComplexityN(std::int64_t{1} << n);
}
BENCHMARK(BM_WalshInit)->DenseRange(8, 20, 4)->Complexity(benchmark::oNLogN);

void BM_PartialDiffusion(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    StateVector vec = apply_walsh_init(new_register(n));
    for (auto _ : state) {
        vec = apply_partial_diffusion(std::move(vec));
        benchmark::DoNotOptimize(vec);
    }
    state.SetComplexityN(std::int64_t{1} << n);
}
BENCHMARK(BM_PartialDiffusion)->DenseRange(8, 20, 4)->Complexity(benchmark::oN);

void BM_SearchIteration(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const MarkedSet marked = MarkedSet::random(n, 3, 1);
    StateVector vec = apply_walsh_init(new_register(n));
    for (auto _ : state) {
        vec = apply_partial_diffusion(apply_oracle(std::move(vec), marked));
        benchmark::DoNotOptimize(vec);
    }
    state.SetComplexityN(std::int64_t{1} << n);
}
BENCHMARK(BM_SearchIteration)->DenseRange(8, 20, 4)->Complexity(benchmark::oN);

void BM_GroverIterationSweepRow(benchmark::State& state) {
    double ratio = 1e-4;
    for (auto _ : state) {
        const SearchShape shape = SearchShape::from_ratio(ratio);
        const IterationPlan plan = required_iterations(shape);
        const GroverShape grover = GroverShape::from_ratio(ratio);
        benchmark::DoNotOptimize(plan);
        benchmark::DoNotOptimize(grover_success(grover_iterations(grover), grover));
        ratio += 1e-4;
        if (ratio > 1.0) {
            ratio = 1e-4;
        }
    }
}
BENCHMARK(BM_GroverIterationSweepRow);

void BM_UnknownMRun(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const MarkedSet marked = MarkedSet::random(n, 1, 5);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        DriverConfig config;
        config.seed = seed++;
        benchmark::DoNotOptimize(run_unknown_m(n, marked, config));
    }
}
BENCHMARK(BM_UnknownMRun)->DenseRange(8, 12, 2);

}  // namespace

BENCHMARK_MAIN();
