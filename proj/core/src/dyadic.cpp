#include "vexlab/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vexlab/errors.hpp"

namespace vexlab {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t pow2(int e) { return std::int64_t{1} << e; }

void require_resolution(int k, int level) {
    if (k < -level)
        throw ResolutionError("dyadic scale " + std::to_string(k) + " is finer than the grid level " +
                              std::to_string(level));
    if (k + level > 58) throw ResolutionError("dyadic scale too coarse to represent");
}

}  // namespace

std::int64_t dyadic_lower_units(int a, int k, std::int64_t m, int level) {
    require_resolution(k, level);
    const std::int64_t big = pow2(level + k);
    const std::int64_t offset = (k & 1) == 0 ? 3 * m - 2 : 3 * m - 1;
    return big * offset + pow2(level) * a;
}

std::int64_t dyadic_locate_units(int a, int k, std::int64_t u, int level) {
    require_resolution(k, level);
    const std::int64_t big = pow2(level + k);
    const std::int64_t lead = (k & 1) == 0 ? 2 * big : big;
    return floor_div(u - pow2(level) * a + lead, 3 * big);
}

std::int64_t DyadicCube::lower_units(int axis, int level) const {
    return dyadic_lower_units(shift[axis], k, m[axis], level);
}

std::int64_t DyadicCube::side_units(int level) const {
    require_resolution(k, level);
    return 3 * pow2(level + k);
}

double DyadicCube::lower(int axis) const {
    const double p = std::ldexp(1.0, k);
    const double m_part = static_cast<double>(m[axis]) * p;
    const double a = shift[axis];
    return (k & 1) == 0 ? m_part + (a - 2.0 * p) / 3.0 : m_part + (a - p) / 3.0;
}

double DyadicCube::side_length() const { return std::ldexp(1.0, k); }

double DyadicCube::volume() const { return std::ldexp(1.0, k * dim); }

Shift distinguished_shift() { return {1, 1}; }

std::vector<Shift> all_shifts(int dim) {
    std::vector<Shift> out;
    if (dim == 1) {
        for (int a = 0; a < 3; ++a) out.push_back({a, 0});
        return out;
    }
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) out.push_back({a, b});
    return out;
}

DyadicCube dyadic_cube(const Shift& a, int dim, int k, const Index2& m, int level) {
    require_resolution(k, level);
    for (int i = 0; i < dim; ++i)
        if (a[i] < 0 || a[i] > 2) throw DomainError("dyadic shift entries must be 0, 1 or 2");
    DyadicCube q;
    q.shift = a;
    q.dim = dim;
    q.k = k;
    q.m = {m[0], dim == 2 ? m[1] : 0};
    if (dim == 1) q.shift[1] = 0;
    return q;
}

std::vector<DyadicCube> children(const DyadicCube& q, int level) {
    require_resolution(q.k - 1, level);
    // Even parents split into odd children 2m-1, 2m; odd parents into even 2m, 2m+1.
    const auto first = [&](std::int64_t m) { return (q.k & 1) == 0 ? 2 * m - 1 : 2 * m; };
    std::vector<DyadicCube> out;
    if (q.dim == 1) {
        for (int i = 0; i < 2; ++i) out.push_back(DyadicCube{q.shift, 1, q.k - 1, {first(q.m[0]) + i, 0}});
        return out;
    }
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 2; ++i)
            out.push_back(DyadicCube{q.shift, 2, q.k - 1, {first(q.m[0]) + i, first(q.m[1]) + j}});
    return out;
}

DyadicCube parent(const DyadicCube& q) {
    DyadicCube p = q;
    p.k = q.k + 1;
    for (int i = 0; i < q.dim; ++i)
        p.m[i] = (q.k & 1) == 0 ? floor_div(q.m[i], 2) : floor_div(q.m[i] + 1, 2);
    return p;
}

DyadicCube locate(const Shift& a, int dim, int k, const Index2& u, int level) {
    Index2 m{0, 0};
    for (int i = 0; i < dim; ++i) m[i] = dyadic_locate_units(a[i], k, u[i], level);
    return dyadic_cube(a, dim, k, m, level);
}

std::int64_t cell_units(const Domain& d, std::int64_t index) {
    const std::int64_t box = 3 * pow2(d.half_extent_log2() + d.level());
    return index * (3 / d.subdivision()) - box;
}

Cube to_grid_cube(const DyadicCube& q, const Domain& t) {
    if (!t.is_thirds()) throw DomainError("dyadic cubes live on the thirds domain");
    const std::int64_t box = 3 * pow2(t.half_extent_log2() + t.level());
    Cube c;
    for (int i = 0; i < q.dim; ++i) c.corner[i] = q.lower_units(i, t.level()) + box;
    c.side_cells = q.side_units(t.level());
    return c;
}

bool dyadic_inside(const DyadicCube& q, const Domain& d) { return to_grid_cube(q, d.thirds()).inside(d.thirds()); }

std::optional<Covering> covering_cube(const Domain& d, const Cube& q) {
    const double side = q.side_length(d);
    if (side > 1.0 / 6.0 * (1.0 + 1e-12)) throw ContractViolation("covering cube needs side(Q) <= 1/6");
    const int level = d.level();
    const std::int64_t scale = 3 / d.subdivision();
    const std::int64_t side_units = q.side_cells * scale;
    Index2 lo{0, 0};
    for (int i = 0; i < d.dim(); ++i) lo[i] = cell_units(d, q.corner[i]);
    for (int k = -level; k <= 0; ++k) {
        const std::int64_t r_side = 3 * pow2(level + k);
        if (r_side < side_units) continue;
        if (r_side > 6 * side_units) break;
        for (const Shift& a : all_shifts(d.dim())) {
            bool ok = true;
            Index2 m{0, 0};
            for (int i = 0; i < d.dim() && ok; ++i) {
                m[i] = dyadic_locate_units(a[i], k, lo[i], level);
                ok = dyadic_locate_units(a[i], k, lo[i] + side_units - 1, level) == m[i];
            }
            if (ok) return Covering{a, dyadic_cube(a, d.dim(), k, m, level)};
        }
    }
    return std::nullopt;
}

DyadicFrame DyadicFrame::make(const Domain& d, const Shift& a) {
    DyadicFrame f;
    f.thirds_ = d.thirds();
    f.shift_ = a;
    if (d.dim() == 1) f.shift_[1] = 0;
    const int level = d.level();
    f.box_units_ = 3 * pow2(d.half_extent_log2() + level);
    for (int k = std::max(-level, d.half_extent_log2() + 1);; ++k) {
        Index2 m{0, 0};
        bool ok = true;
        for (int i = 0; i < d.dim() && ok; ++i) {
            m[i] = dyadic_locate_units(f.shift_[i], k, -f.box_units_, level);
            ok = dyadic_locate_units(f.shift_[i], k, f.box_units_ - 1, level) == m[i];
        }
        if (!ok) continue;
        f.top_ = dyadic_cube(f.shift_, d.dim(), k, m, level);
        f.depth_ = k + level;
        for (int i = 0; i < d.dim(); ++i) f.top_units_[i] = f.top_.lower_units(i, level);
        return f;
    }
}

std::size_t DyadicFrame::node_count(int depth) const {
    const auto n = static_cast<std::size_t>(nodes_per_axis(depth));
    return dim() == 1 ? n : n * n;
}

Index2 DyadicFrame::unravel(int depth, std::size_t node) const {
    const auto n = static_cast<std::size_t>(nodes_per_axis(depth));
    if (dim() == 1) return {static_cast<std::int64_t>(node), 0};
    return {static_cast<std::int64_t>(node % n), static_cast<std::int64_t>(node / n)};
}

std::size_t DyadicFrame::ravel(int depth, const Index2& idx) const {
    if (dim() == 1) return static_cast<std::size_t>(idx[0]);
    return static_cast<std::size_t>(idx[1] * nodes_per_axis(depth) + idx[0]);
}

std::size_t DyadicFrame::leaf_of_cell(std::size_t cell) const {
    const Index2 c = thirds_.unravel(cell);
    Index2 leaf{0, 0};
    for (int i = 0; i < dim(); ++i) leaf[i] = (c[i] - box_units_ - top_units_[i]) / 3;
    return ravel(depth_, leaf);
}

std::size_t DyadicFrame::ancestor(std::size_t leaf, int depth) const {
    Index2 idx = unravel(depth_, leaf);
    for (int i = 0; i < dim(); ++i) idx[i] >>= (depth_ - depth);
    return ravel(depth, idx);
}

DyadicCube DyadicFrame::node_cube(int depth, std::size_t node) const {
    const int k = scale_at(depth);
    const Index2 idx = unravel(depth, node);
    Index2 u{0, 0};
    const std::int64_t side = 3 * pow2(thirds_.level() + k);
    for (int i = 0; i < dim(); ++i) u[i] = top_units_[i] + idx[i] * side;
    return locate(shift_, dim(), k, u, thirds_.level());
}

std::vector<std::size_t> DyadicFrame::leaf_cells(std::size_t leaf) const {
    const Index2 idx = unravel(depth_, leaf);
    std::array<std::int64_t, 2> lo{0, 0}, hi{1, 1};
    for (int i = 0; i < dim(); ++i) {
        const std::int64_t start = top_units_[i] + 3 * idx[i] + box_units_;
        lo[i] = std::max<std::int64_t>(start, 0);
        hi[i] = std::min<std::int64_t>(start + 3, 2 * box_units_);
    }
    std::vector<std::size_t> out;
    for (std::int64_t y = lo[1]; y < hi[1]; ++y)
        for (std::int64_t x = lo[0]; x < hi[0]; ++x) out.push_back(thirds_.ravel({x, y}));
    return out;
}

DyadicTree DyadicTree::build(const GridFunction& f, const Shift& a) {
    return build_weighted(f, GridFunction::constant(f.domain(), 1.0), a);
}

DyadicTree DyadicTree::build_weighted(const GridFunction& f, const GridFunction& weight, const Shift& a) {
    DyadicTree t;
    t.frame_ = DyadicFrame::make(f.domain(), a);
    const Domain& td = t.frame_.thirds();
    const GridFunction ft = on_domain(f, td);
    const GridFunction wt = on_domain(weight, td);
    const int depth = t.frame_.depth();
    t.num_.resize(depth + 1);
    t.den_.resize(depth + 1);
    const std::size_t leaves = t.frame_.leaf_count();
    std::vector<double> wsum(leaves, 0.0);
    std::vector<int> inside(leaves, 0);
    t.num_[depth].assign(leaves, 0.0);
    for (std::size_t c = 0; c < td.cell_count(); ++c) {
        const std::size_t leaf = t.frame_.leaf_of_cell(c);
        t.num_[depth][leaf] += std::abs(ft[c]) * wt[c];
        wsum[leaf] += wt[c];
        ++inside[leaf];
    }
    const int per_leaf = td.dim() == 1 ? 3 : 9;
    t.den_[depth].resize(leaves);
    for (std::size_t l = 0; l < leaves; ++l) t.den_[depth][l] = static_cast<double>(per_leaf - inside[l]) + wsum[l];
    for (int d = depth - 1; d >= 0; --d) {
        const std::size_t count = t.frame_.node_count(d);
        t.num_[d].assign(count, 0.0);
        t.den_[d].assign(count, 0.0);
        for (std::size_t node = 0; node < count; ++node) {
            const Index2 idx = t.frame_.unravel(d, node);
            const int ny = td.dim() == 2 ? 2 : 1;
            for (int j = 0; j < ny; ++j)
                for (int i = 0; i < 2; ++i) {
                    const std::size_t child = t.frame_.ravel(d + 1, {2 * idx[0] + i, 2 * idx[1] + j});
                    t.num_[d][node] += t.num_[d + 1][child];
                    t.den_[d][node] += t.den_[d + 1][child];
                }
        }
    }
    return t;
}

std::vector<double> DyadicTree::leaf_maximal(int max_scale) const {
    const int depth = frame_.depth();
    std::vector<double> best(1, frame_.scale_at(0) <= max_scale ? average(0, 0) : 0.0);
    for (int d = 1; d <= depth; ++d) {
        const bool admissible = frame_.scale_at(d) <= max_scale;
        std::vector<double> next(frame_.node_count(d));
        for (std::size_t node = 0; node < next.size(); ++node) {
            Index2 idx = frame_.unravel(d, node);
            idx[0] >>= 1;
            idx[1] >>= 1;
            const double up = best[frame_.ravel(d - 1, idx)];
            next[node] = admissible ? std::max(up, average(d, node)) : up;
        }
        best = std::move(next);
    }
    return best;
}

GridFunction DyadicTree::maximal(int max_scale) const {
    const std::vector<double> best = leaf_maximal(max_scale);
    const Domain& td = frame_.thirds();
    std::vector<double> out(td.cell_count());
    for (std::size_t c = 0; c < out.size(); ++c) out[c] = best[frame_.leaf_of_cell(c)];
    return GridFunction(td, std::move(out));
}

}  // namespace vexlab
