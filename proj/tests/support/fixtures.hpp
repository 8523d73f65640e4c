#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "vexlab/grid.hpp"

namespace vexlab::testing {

inline GridFunction random_function(const Domain& d, std::uint64_t seed, double lo = 0.0, double hi = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(d.cell_count());
    for (double& x : v) x = u(rng);
    return GridFunction(d, std::move(v));
}

// Random dyadic rationals k/64 with k in [0, 64): sums of these stay exact.
inline GridFunction random_dyadic_function(const Domain& d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> u(0, 63);
    std::vector<double> v(d.cell_count());
    for (double& x : v) x = u(rng) / 64.0;
    return GridFunction(d, std::move(v));
}

// Sparse spikes on a zero background, which keeps the stopping-time levels populated.
inline GridFunction random_spiky_function(const Domain& d, std::uint64_t seed, int spikes = 6) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> cell(0, d.cell_count() - 1);
    std::uniform_int_distribution<int> height(1, 1 << 12);
    std::vector<double> v(d.cell_count(), 0.0);
    for (int i = 0; i < spikes; ++i) v[cell(rng)] = height(rng);
    return GridFunction(d, std::move(v));
}

}  // namespace vexlab::testing
