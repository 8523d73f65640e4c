#pragma once

// Reference computations written independently of the library: long double
// arithmetic, plain loops, no shared helpers.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "vexlab/grid.hpp"
#include "vexlab/dyadic.hpp"

namespace vexlab::oracle {

// Integral of (|f|/lambda)^p w over cells of volume vol.
inline long double modular(std::span<const double> f, std::span<const double> p, std::span<const double> w,
                           long double vol, long double lambda) {
    long double s = 0.0L;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const long double a = std::fabs(static_cast<long double>(f[i]));
        if (a == 0.0L) continue;
        s += static_cast<long double>(w[i]) * std::pow(a / lambda, static_cast<long double>(p[i]));
    }
    return s * vol;
}

// Root of modular(lambda) = 1 by the Illinois variant of regula falsi on
// log(lambda) against log(modular); the map is strictly decreasing and close
// to linear in these variables.
inline long double luxemburg(std::span<const double> f, std::span<const double> p, std::span<const double> w,
                             long double vol) {
    auto g = [&](long double t) { return std::log(modular(f, p, w, vol, std::exp(t))); };
    long double a = 0.0L, ga = g(a);
    if (!std::isfinite(ga)) return 0.0L;  // f == 0
    const long double step = ga > 0 ? 1.0L : -1.0L;
    long double b = a + step, gb = g(b);
    while ((ga > 0) == (gb > 0)) {
        a = b;
        ga = gb;
        b += step;
        gb = g(b);
    }
    int side = 0;
    for (int it = 0; it < 200 && std::fabs(b - a) > 1e-18L; ++it) {
        const long double c = (a * gb - b * ga) / (gb - ga);
        const long double gc = g(c);
        if (gc == 0.0L) return std::exp(c);
        if ((gc > 0) == (gb > 0)) {
            b = c;
            gb = gc;
            if (side == -1) ga /= 2;
            side = -1;
        } else {
            a = c;
            ga = gc;
            if (side == 1) gb /= 2;
            side = 1;
        }
    }
    return std::exp((a * gb - b * ga) / (gb - ga));
}

// Interval of D_{k,a} straight from the defining formulas, in units of 2^-J / 3.
inline std::pair<std::int64_t, std::int64_t> formula_interval(int a, int k, std::int64_t m, int level) {
    const long double p = std::ldexp(1.0L, k);
    const long double lo = (k % 2 == 0) ? m * p + (a - 2 * p) / 3 : m * p + (a - p) / 3;
    const long double scale = 3 * std::ldexp(1.0L, level);
    const auto l = static_cast<std::int64_t>(std::llround(lo * scale));
    return {l, l + static_cast<std::int64_t>(std::llround(p * scale))};
}

// M_D f by direct summation over every dyadic cube containing each cell, f
// extended by zero outside the box.
inline std::vector<double> brute_dyadic_maximal(const GridFunction& f, const Shift& a, int max_k) {
    const Domain t = f.domain().thirds();
    const GridFunction ft = on_domain(f, t);
    const int level = t.level(), dim = t.dim();
    const std::int64_t n = t.cells_per_axis();
    // Prefix sums in units coordinates.
    std::vector<double> pre((n + 1) * (dim == 2 ? n + 1 : 1), 0.0);
    const auto at = [&](std::int64_t x, std::int64_t y) -> double& { return pre[y * (n + 1) + x]; };
    for (std::int64_t y = 0; y < (dim == 2 ? n : 1); ++y)
        for (std::int64_t x = 0; x < n; ++x) {
            const double v = std::abs(ft[t.ravel({x, y})]);
            if (dim == 1) at(x + 1, 0) = at(x, 0) + v;
            else at(x + 1, y + 1) = at(x, y + 1) + at(x + 1, y) - at(x, y) + v;
        }
    const std::int64_t box = n / 2;
    const auto clampi = [&](std::int64_t u) { return std::clamp<std::int64_t>(u + box, 0, n); };
    std::vector<double> out(t.cell_count(), 0.0);
    for (std::size_t c = 0; c < out.size(); ++c) {
        const Index2 idx = t.unravel(c);
        for (int k = -level; k <= max_k; ++k) {
            std::int64_t lo[2] = {0, 0}, hi[2] = {1, 1};
            std::int64_t side = 0;
            for (int i = 0; i < dim; ++i) {
                const std::int64_t u = idx[i] - box;
                // Guess m from the real-valued formula, then correct by one step if needed.
                const long double p = std::ldexp(1.0L, k);
                const long double x = static_cast<long double>(u) / (3 * std::ldexp(1.0L, level));
                const long double off = (k % 2 == 0) ? (a[i] - 2 * p) / 3 : (a[i] - p) / 3;
                auto m = static_cast<std::int64_t>(std::floor((x - off) / p));
                auto [l, h] = formula_interval(a[i], k, m, level);
                if (u < l) std::tie(l, h) = formula_interval(a[i], k, --m, level);
                if (u >= h) std::tie(l, h) = formula_interval(a[i], k, ++m, level);
                lo[i] = clampi(l);
                hi[i] = clampi(h);
                side = h - l;
            }
            double sum = dim == 1 ? at(hi[0], 0) - at(lo[0], 0)
                                  : at(hi[0], hi[1]) - at(lo[0], hi[1]) - at(hi[0], lo[1]) + at(lo[0], lo[1]);
            const double vol = dim == 1 ? static_cast<double>(side) : static_cast<double>(side * side);
            out[c] = std::max(out[c], sum / vol);
        }
    }
    return out;
}

}  // namespace vexlab::oracle
