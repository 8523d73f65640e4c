#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "vexlab/sparse.hpp"

using namespace vexlab;

namespace {

GridFunction spiky(const Domain& d, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> v(d.cell_count());
    for (double& x : v) x = std::pow(u(rng), 16.0);
    return GridFunction(d, std::move(v));
}

}  // namespace

static void BM_SparseDecompose(benchmark::State& state) {
    const Domain d = Domain::make(1, 2, static_cast<int>(state.range(0)));
    const auto f = spiky(d, 1);
    std::size_t cubes = 0;
    for (auto _ : state) {
        const auto fam = sparse_decompose(f, 8.0);
        cubes = fam.cube_count();
        benchmark::DoNotOptimize(cubes);
    }
    state.counters["cubes"] = static_cast<double>(cubes);
}
BENCHMARK(BM_SparseDecompose)->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond);

static void BM_SparseVerify(benchmark::State& state) {
    const Domain d = Domain::make(1, 2, static_cast<int>(state.range(0)));
    const auto f = spiky(d, 2);
    const auto fam = sparse_decompose(f, 8.0);
    for (auto _ : state) benchmark::DoNotOptimize(verify_sparse_family(fam, f).all());
}
BENCHMARK(BM_SparseVerify)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
