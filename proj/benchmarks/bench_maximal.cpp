#include <benchmark/benchmark.h>

#include <random>

#include "vexlab/dyadic.hpp"
#include "vexlab/maximal.hpp"

using namespace vexlab;

namespace {

GridFunction noise(const Domain& d, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> v(d.cell_count());
    for (double& x : v) x = u(rng);
    return GridFunction(d, std::move(v));
}

}  // namespace

// Sliding-window sweep over every side up to the unit cube: O(N * sides).
static void BM_LocalMaximalSweep(benchmark::State& state) {
    const Domain d = Domain::make(1, 2, static_cast<int>(state.range(0)));
    const auto f = noise(d, 1);
    for (auto _ : state) benchmark::DoNotOptimize(maximal(f, MaximalSpec::local()).max());
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(d.cell_count()));
}
BENCHMARK(BM_LocalMaximalSweep)->DenseRange(5, 9, 1)->Unit(benchmark::kMillisecond);

static void BM_LocalMaximalSweep2D(benchmark::State& state) {
    const Domain d = Domain::make(2, 0, static_cast<int>(state.range(0)));
    const auto f = noise(d, 2);
    for (auto _ : state) benchmark::DoNotOptimize(maximal(f, MaximalSpec::local()).max());
}
BENCHMARK(BM_LocalMaximalSweep2D)->DenseRange(3, 5, 1)->Unit(benchmark::kMillisecond);

// The dyadic fast path: tree build plus one pass over the leaves.
static void BM_DyadicTree(benchmark::State& state) {
    const Domain d = Domain::make(1, 2, static_cast<int>(state.range(0)));
    const auto f = noise(d, 3);
    for (auto _ : state) {
        const auto tree = DyadicTree::build(f, distinguished_shift());
        benchmark::DoNotOptimize(tree.maximal(tree.frame().top_scale()).max());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(d.cell_count()));
}
BENCHMARK(BM_DyadicTree)->DenseRange(6, 14, 2)->Unit(benchmark::kMillisecond);

static void BM_ComposeLocal6(benchmark::State& state) {
    const Domain d = Domain::make(1, 1, 8);
    const auto f = noise(d, 4);
    for (auto _ : state) benchmark::DoNotOptimize(compose_maximal(f, MaximalSpec::local6(), 7).max());
}
BENCHMARK(BM_ComposeLocal6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
