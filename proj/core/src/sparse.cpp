#include "vexlab/sparse.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <limits>
#include <tuple>

#include "vexlab/errors.hpp"

namespace vexlab {

namespace {

double power(double a, int k) { return std::pow(a, k); }

void collect_leaves(const DyadicFrame& frame, int depth, std::size_t node, std::vector<std::size_t>& out) {
    const Index2 idx = frame.unravel(depth, node);
    const int shift = frame.depth() - depth;
    const std::int64_t span = std::int64_t{1} << shift;
    const std::int64_t ny = frame.dim() == 2 ? span : 1;
    for (std::int64_t y = 0; y < ny; ++y)
        for (std::int64_t x = 0; x < span; ++x)
            out.push_back(frame.ravel(frame.depth(), {(idx[0] << shift) + x, frame.dim() == 2 ? (idx[1] << shift) + y : 0}));
    std::sort(out.begin(), out.end());
}

}  // namespace

std::size_t SparseFamily::cube_count() const {
    std::size_t n = 0;
    for (const auto& l : levels) n += l.cubes.size();
    return n;
}

std::vector<std::size_t> SparseFamily::leaves(const SparseCube& q) const {
    std::vector<std::size_t> out;
    collect_leaves(frame, q.depth, q.node, out);
    return out;
}

std::size_t SparseFamily::leaves_per_cube(const SparseCube& q) const {
    return std::size_t{1} << (frame.dim() * (frame.depth() - q.depth));
}

double default_sparse_base(int dim) { return std::ldexp(1.0, dim + 2); }

SparseFamily sparse_decompose(const GridFunction& f, double a) { return sparse_decompose(f, distinguished_shift(), a); }

SparseFamily sparse_decompose(const GridFunction& f, const Shift& a_shift, double a) {
    const int dim = f.domain().dim();
    if (!(a > std::ldexp(1.0, dim))) throw DomainError("sparse decomposition needs a > 2^n");
    const DyadicTree tree = DyadicTree::build(f, a_shift);
    SparseFamily fam;
    fam.a = a;
    fam.frame = tree.frame();
    fam.maximal = tree.leaf_maximal(INT_MAX);
    if (f.is_zero()) return fam;
    const DyadicFrame& frame = fam.frame;
    const double top_avg = tree.average(0, 0);
    const double peak = *std::max_element(fam.maximal.begin(), fam.maximal.end());
    int k = static_cast<int>(std::floor(std::log(top_avg) / std::log(a)));
    while (power(a, k) < top_avg) ++k;
    while (power(a, k - 1) >= top_avg) --k;
    for (; power(a, k) < peak; ++k) {
        SparseLevel level;
        level.k = k;
        level.threshold = power(a, k);
        const double next = power(a, k + 1);
        // Top-down: stop at the first node whose average exceeds the threshold.
        std::vector<std::pair<int, std::size_t>> stack{{0, 0}};
        while (!stack.empty()) {
            const auto [d, node] = stack.back();
            stack.pop_back();
            if (tree.average(d, node) > level.threshold) {
                SparseCube q;
                q.depth = d;
                q.node = node;
                q.cube = frame.node_cube(d, node);
                q.average = tree.average(d, node);
                std::vector<std::size_t> all;
                collect_leaves(frame, d, node, all);
                for (std::size_t leaf : all)
                    if (!(fam.maximal[leaf] > next)) q.nutshell.push_back(leaf);
                level.cubes.push_back(std::move(q));
                continue;
            }
            if (d == frame.depth()) continue;
            const Index2 idx = frame.unravel(d, node);
            const int ny = dim == 2 ? 2 : 1;
            for (int j = ny - 1; j >= 0; --j)
                for (int i = 1; i >= 0; --i)
                    stack.push_back({d + 1, frame.ravel(d + 1, {2 * idx[0] + i, dim == 2 ? 2 * idx[1] + j : 0})});
        }
        std::sort(level.cubes.begin(), level.cubes.end(),
                  [](const SparseCube& x, const SparseCube& y) { return std::tie(x.depth, x.node) < std::tie(y.depth, y.node); });
        if (!level.cubes.empty()) fam.levels.push_back(std::move(level));
    }
    return fam;
}

SparseInvariants verify_sparse_family(const SparseFamily& fam, const GridFunction& f) {
    SparseInvariants inv;
    const DyadicTree tree = DyadicTree::build(f, fam.frame.shift());
    const std::size_t leaves = fam.frame.leaf_count();
    const double two_n = std::ldexp(1.0, fam.frame.dim());
    std::vector<int> nut_owner(leaves, 0);
    for (const SparseLevel& level : fam.levels) {
        std::vector<int> cover(leaves, 0);
        std::vector<char> in_nut(leaves, 0);
        for (const SparseCube& q : level.cubes) {
            const std::vector<std::size_t> ql = fam.leaves(q);
            for (std::size_t l : ql) ++cover[l];
            const double avg = tree.average(q.depth, q.node);
            if (!(avg > level.threshold && avg <= two_n * level.threshold)) inv.average_bracket = false;
            if (q.depth > 0) {
                Index2 idx = fam.frame.unravel(q.depth, q.node);
                idx[0] >>= 1;
                idx[1] >>= 1;
                if (tree.average(q.depth - 1, fam.frame.ravel(q.depth - 1, idx)) > level.threshold)
                    inv.maximal_cubes = false;
            } else {
                inv.maximal_cubes = false;  // the frame cube itself is never a stopping cube
            }
            if (!std::includes(ql.begin(), ql.end(), q.nutshell.begin(), q.nutshell.end()))
                inv.nutshell_measure = false;
            if (2 * q.nutshell.size() < ql.size()) inv.nutshell_measure = false;
            for (std::size_t l : q.nutshell) {
                if (++nut_owner[l] > 1) inv.nutshell_measure = false;
                in_nut[l] = 1;
            }
        }
        const double next = level.threshold * fam.a;
        for (std::size_t l = 0; l < leaves; ++l) {
            if (cover[l] > 1) inv.disjoint = false;
            const bool in_omega = fam.maximal[l] > level.threshold;
            if (in_omega != (cover[l] > 0)) inv.level_sets = false;
            const bool in_diff = in_omega && !(fam.maximal[l] > next);
            if (in_diff != (in_nut[l] != 0)) inv.nutshell_partition = false;
        }
    }
    return inv;
}

double sparse_domination_check(const SparseFamily& fam) {
    std::vector<double> sum(fam.frame.leaf_count(), 0.0);
    for (const SparseLevel& level : fam.levels)
        for (const SparseCube& q : level.cubes)
            for (std::size_t l : q.nutshell) sum[l] += q.average;
    if (fam.levels.empty()) return 0.0;
    const double lowest = fam.levels.front().threshold;
    double worst = 0.0;
    for (std::size_t l = 0; l < sum.size(); ++l) {
        if (!(fam.maximal[l] > lowest)) continue;
        worst = std::max(worst, sum[l] > 0.0 ? fam.maximal[l] / sum[l] : std::numeric_limits<double>::infinity());
    }
    return worst;
}

CarlesonReport carleson_sum_check(const SparseFamily& fam, const GridFunction& g, const Weight& w, double r) {
    if (!(r > 1.0)) throw DomainError("Carleson sum needs r > 1");
    const DyadicTree tree = DyadicTree::build_weighted(g, w.values(), fam.frame.shift());
    const Domain& t = fam.frame.thirds();
    const double v = t.cell_volume();
    CarlesonReport rep;
    for (const SparseLevel& level : fam.levels)
        for (const SparseCube& q : level.cubes)
            rep.lhs += std::pow(tree.average(q.depth, q.node), r) * tree.den(q.depth, q.node) * v;
    const GridFunction gt = on_domain(g, t);
    const GridFunction wt = on_domain(w.values(), t);
    for (std::size_t i = 0; i < gt.size(); ++i) rep.rhs += std::pow(std::abs(gt[i]), r) * wt[i];
    rep.rhs *= v;
    return rep;
}

}  // namespace vexlab
