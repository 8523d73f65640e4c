#include "vexlab/maximal.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <deque>
#include <limits>
#include <mutex>

#include "vexlab/errors.hpp"
#include "vexlab/norms.hpp"
#include "vexlab/parallel.hpp"

namespace vexlab {

namespace {

// out[x] = max(in[c] : c in [x - s + 1, x], 0 <= c < in.size()), for x in [0, out.size()).
void sliding_max(std::span<const double> in, std::int64_t s, std::span<double> out) {
    std::deque<std::int64_t> window;
    const auto m = static_cast<std::int64_t>(in.size());
    const auto n = static_cast<std::int64_t>(out.size());
    for (std::int64_t x = 0; x < n; ++x) {
        if (x < m) {
            while (!window.empty() && in[window.back()] <= in[x]) window.pop_back();
            window.push_back(x);
        }
        while (!window.empty() && window.front() < x - s + 1) window.pop_front();
        out[x] = window.empty() ? 0.0 : in[window.front()];
    }
}

// Sup of averages over all cubes of side s containing each cell, merged into best.
void sweep_side(const Domain& d, const CubeSums& sums, std::int64_t s, std::vector<double>& best) {
    const std::int64_t n = d.cells_per_axis();
    const std::int64_t corners = n - s + 1;
    const double cells = d.dim() == 1 ? static_cast<double>(s) : static_cast<double>(s) * static_cast<double>(s);
    if (d.dim() == 1) {
        std::vector<double> avg(corners), out(n);
        for (std::int64_t c = 0; c < corners; ++c) avg[c] = sums.sum(Cube{{c, 0}, s}) / cells;
        sliding_max(avg, s, out);
        for (std::int64_t x = 0; x < n; ++x) best[x] = std::max(best[x], out[x]);
        return;
    }
    std::vector<double> avg(static_cast<std::size_t>(corners * corners));
    for (std::int64_t y = 0; y < corners; ++y)
        for (std::int64_t x = 0; x < corners; ++x) avg[y * corners + x] = sums.sum(Cube{{x, y}, s}) / cells;
    // Along axis 0, then axis 1.
    std::vector<double> rows(static_cast<std::size_t>(corners * n));
    for (std::int64_t y = 0; y < corners; ++y)
        sliding_max(std::span<const double>(avg).subspan(y * corners, corners), s,
                    std::span<double>(rows).subspan(y * n, n));
    std::vector<double> col_in(corners), col_out(n);
    for (std::int64_t x = 0; x < n; ++x) {
        for (std::int64_t y = 0; y < corners; ++y) col_in[y] = rows[y * n + x];
        sliding_max(col_in, s, col_out);
        for (std::int64_t y = 0; y < n; ++y) {
            double& b = best[y * n + x];
            b = std::max(b, col_out[y]);
        }
    }
}

GridFunction sweep_maximal(const GridFunction& f, double cap) {
    const Domain& d = f.domain();
    const GridFunction af = f.abs();
    const CubeSums sums(af);
    const std::int64_t smax = max_side_cells(d, cap);
    std::vector<double> best(d.cell_count(), 0.0);
    std::mutex merge;
    parallel_for(static_cast<std::size_t>(smax), [&](std::size_t begin, std::size_t end) {
        std::vector<double> local(d.cell_count(), 0.0);
        for (std::size_t s = begin; s < end; ++s) sweep_side(d, sums, static_cast<std::int64_t>(s) + 1, local);
        std::lock_guard lock(merge);
        for (std::size_t i = 0; i < best.size(); ++i) best[i] = std::max(best[i], local[i]);
    });
    return GridFunction(d, std::move(best));
}

}  // namespace

double volume_cap(const MaximalSpec& spec, int dim) {
    switch (spec.flavor) {
        case Flavor::Global: return std::numeric_limits<double>::infinity();
        case Flavor::Local: return 1.0;
        case Flavor::LocalR:
            if (!(spec.radius >= 1.0)) throw ContractViolation("M^{loc,R} needs R >= 1");
            return std::pow(spec.radius, dim);
        case Flavor::Local6: return std::pow(6.0, -dim);
    }
    return 1.0;
}

int dyadic_scale_cap(const MaximalSpec& spec, int dim) {
    const double cap = volume_cap(spec, dim);
    if (std::isinf(cap)) return INT_MAX;
    // Side 2^k with 2^{kn} <= cap.
    const double side = std::pow(cap, 1.0 / dim);
    int k = static_cast<int>(std::floor(std::log2(side)));
    while (std::ldexp(1.0, k + 1) <= side * (1 + 1e-12)) ++k;
    while (std::ldexp(1.0, k) > side * (1 + 1e-12)) --k;
    return k;
}

GridFunction maximal(const GridFunction& f, const MaximalSpec& spec) {
    const double cap = volume_cap(spec, f.domain().dim());
    if (spec.dyadic) return DyadicTree::build(f, *spec.dyadic).maximal(dyadic_scale_cap(spec, f.domain().dim()));
    return sweep_maximal(f, cap);
}

GridFunction compose_maximal(const GridFunction& f, const MaximalSpec& spec, int times) {
    if (times < 1) throw ContractViolation("composition needs at least one application");
    GridFunction g = maximal(f, spec);
    for (int i = 1; i < times; ++i) g = maximal(g, spec);
    return g;
}

GridFunction weighted_dyadic_maximal(const GridFunction& f, const Weight& w, const Shift& a) {
    return DyadicTree::build_weighted(f, w.values(), a).maximal(INT_MAX);
}

GridFunction vector_magnitude(std::span<const GridFunction> fs, double q) {
    if (fs.empty()) throw ContractViolation("vector-valued operation needs at least one function");
    Domain d = fs.front().domain();
    for (const auto& g : fs)
        if (g.domain().is_thirds()) d = g.domain();
    std::vector<double> acc(d.cell_count(), 0.0);
    for (const auto& g0 : fs) {
        const GridFunction g = on_domain(g0, d);
        for (std::size_t i = 0; i < acc.size(); ++i) {
            const double v = std::abs(g[i]);
            acc[i] = std::isinf(q) ? std::max(acc[i], v) : acc[i] + std::pow(v, q);
        }
    }
    if (!std::isinf(q))
        for (double& v : acc) v = std::pow(v, 1.0 / q);
    return GridFunction(d, std::move(acc));
}

GridFunction vector_maximal(std::span<const GridFunction> fs, double q, const MaximalSpec& spec) {
    if (fs.empty()) throw ContractViolation("vector-valued operation needs at least one function");
    std::vector<GridFunction> ms;
    ms.reserve(fs.size());
    for (const auto& g : fs) ms.push_back(maximal(g, spec));
    return vector_magnitude(ms, q);
}

double weak_type_level(const GridFunction& mf, const RelaxedExponent& p, double t) {
    if (!(t > 0.0)) throw DomainError("weak-type level needs t > 0");
    const GridFunction level = mf.map([t](double v) { return v > t ? 1.0 : 0.0; });
    if (level.is_zero()) return 0.0;
    const Domain d = mf.domain().is_thirds() ? mf.domain() : p.domain();
    return t * luxemburg_norm(on_domain(level, d), p, GridFunction::constant(d, 1.0)).value;
}

double weak_type_functional(const GridFunction& f, const RelaxedExponent& p, double t) {
    return weak_type_level(maximal(f, MaximalSpec::global()), p, t);
}

double boundedness_ratio(const GridFunction& f, const VariableExponent& p, const Weight& w, const MaximalSpec& spec) {
    const double denom = luxemburg_norm(f, p, w.values()).value;
    if (!(denom > 0.0)) throw ContractViolation("boundedness ratio needs ||f|| > 0");
    return luxemburg_norm(maximal(f, spec), p, w.values()).value / denom;
}

}  // namespace vexlab
