#include <benchmark/benchmark.h>

#include <random>

#include "vexlab/exponent.hpp"
#include "vexlab/norms.hpp"

using namespace vexlab;

namespace {

GridFunction noise(const Domain& d, unsigned seed, double lo, double hi) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(d.cell_count());
    for (double& x : v) x = u(rng);
    return GridFunction(d, std::move(v));
}

}  // namespace

// Cost of one Luxemburg norm as the grid grows (1D, S = 2).
static void BM_LuxemburgNorm(benchmark::State& state) {
    const Domain d = Domain::make(1, 2, static_cast<int>(state.range(0)));
    const auto f = noise(d, 1, 0.0, 2.0);
    const auto w = noise(d, 2, 0.1, 10.0);
    const auto p = lh_smooth_exponent(d);
    for (auto _ : state) benchmark::DoNotOptimize(luxemburg_norm(f, p, w).value);
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(d.cell_count()));
}
BENCHMARK(BM_LuxemburgNorm)->DenseRange(6, 12, 2);

static void BM_ChiNorm(benchmark::State& state) {
    const Domain d = Domain::make(1, 2, 10);
    const auto p = lh_smooth_exponent(d);
    const auto w = noise(d, 3, 0.5, 2.0);
    const Cube q{{0, 0}, state.range(0)};
    for (auto _ : state) benchmark::DoNotOptimize(chi_norm(p, w, q));
}
BENCHMARK(BM_ChiNorm)->RangeMultiplier(8)->Range(8, 4096);

static void BM_LocalizationNorm(benchmark::State& state) {
    const Domain d = Domain::make(1, 3, static_cast<int>(state.range(0)));
    const auto f = noise(d, 4, 0.0, 1.0);
    const auto p = lh_smooth_exponent(d);
    for (auto _ : state) benchmark::DoNotOptimize(localization_norm(f, p));
}
BENCHMARK(BM_LocalizationNorm)->Arg(6)->Arg(8);

BENCHMARK_MAIN();
