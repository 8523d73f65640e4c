#include <benchmark/benchmark.h>

#include "vexlab/exponent.hpp"
#include "vexlab/weights.hpp"

using namespace vexlab;

// sup over all local cubes: one chi-norm pair per cube.
static void BM_MuckenhouptAllLocal(benchmark::State& state) {
    const Domain d = Domain::make(1, 2, static_cast<int>(state.range(0)));
    const auto p = lh_smooth_exponent(d);
    const Weight w = power_weight(d, 0.5);
    for (auto _ : state) benchmark::DoNotOptimize(muckenhoupt_constant(w, p, CubeFamily::AllLocal).value);
}
BENCHMARK(BM_MuckenhouptAllLocal)->DenseRange(4, 7, 1)->Unit(benchmark::kMillisecond);

static void BM_MuckenhouptDyadic(benchmark::State& state) {
    const Domain d = Domain::make(1, 2, static_cast<int>(state.range(0)));
    const auto p = lh_smooth_exponent(d);
    const Weight w = power_weight(d, 0.5);
    for (auto _ : state) benchmark::DoNotOptimize(muckenhoupt_constant(w, p, CubeFamily::DyadicLocal).value);
}
BENCHMARK(BM_MuckenhouptDyadic)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);

static void BM_ExtendWeight(benchmark::State& state) {
    const Domain d = Domain::make(1, 2, 8);
    const auto p = lh_smooth_exponent(d);
    const Weight w = power_weight(d, -0.5);
    for (auto _ : state) benchmark::DoNotOptimize(extend_weight(w, p, base_cube(1)).values().max());
}
BENCHMARK(BM_ExtendWeight)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
