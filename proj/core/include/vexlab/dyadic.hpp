#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "vexlab/grid.hpp"

namespace vexlab {

using Shift = std::array<int, 2>;  // a in {0,1,2}^n; the second entry is ignored in 1D

/**
 * Cube of the shifted dyadic grid D_{k,a}. Along each axis, for even k it is
 *   [m 2^k + (a - 2^{k+1})/3, m 2^k + (a + 2^k)/3),
 * for odd k
 *   [m 2^k + (a - 2^k)/3,     m 2^k + (a + 2^{k+1})/3).
 *
 * Coordinates are handled in "units" u = 3 * 2^J * x, where every endpoint is
 * an integer as long as k >= -J.
 */
struct DyadicCube {
    Shift shift{1, 1};
    int dim = 1;
    int k = 0;
    Index2 m{0, 0};

    std::int64_t lower_units(int axis, int level) const;
    std::int64_t side_units(int level) const;
    double lower(int axis) const;
    double side_length() const;
    double volume() const;

    auto operator<=>(const DyadicCube&) const = default;
};

Shift distinguished_shift();
std::vector<Shift> all_shifts(int dim);

// ResolutionError when k < -level.
DyadicCube dyadic_cube(const Shift& a, int dim, int k, const Index2& m, int level);

std::int64_t dyadic_lower_units(int a, int k, std::int64_t m, int level);
// Index m of the interval of D_{k,a} containing the unit coordinate u.
std::int64_t dyadic_locate_units(int a, int k, std::int64_t u, int level);

std::vector<DyadicCube> children(const DyadicCube& q, int level);
DyadicCube parent(const DyadicCube& q);

// Cube of D_{k,a} containing the unit point u (per axis).
DyadicCube locate(const Shift& a, int dim, int k, const Index2& u, int level);

// Units coordinate of the lower edge of a cell of d (coarse or thirds) along an axis.
std::int64_t cell_units(const Domain& d, std::int64_t index);

// The dyadic cube as a cube of the thirds domain t (it may stick out of the box).
Cube to_grid_cube(const DyadicCube& q, const Domain& t);
bool dyadic_inside(const DyadicCube& q, const Domain& d);

struct Covering {
    Shift shift;
    DyadicCube cube;
};

/**
 * Smallest cube R of some D_a containing Q with side(R) <= 6 side(Q) and
 * |R| <= 1; ties broken by lexicographic shift order. ContractViolation when
 * side(Q) > 1/6; nullopt if no admissible R exists.
 */
std::optional<Covering> covering_cube(const Domain& d, const Cube& q);

/**
 * Smallest cube T of D_a containing the whole box, and the standard quadtree
 * of its descendants down to scale -J (the leaves). Leaves are indexed within
 * T; every thirds cell of the box lies in exactly one leaf.
 */
class DyadicFrame {
public:
    static DyadicFrame make(const Domain& d, const Shift& a);

    const Domain& thirds() const { return thirds_; }
    const Shift& shift() const { return shift_; }
    int dim() const { return thirds_.dim(); }
    int top_scale() const { return top_.k; }
    const DyadicCube& top() const { return top_; }
    int depth() const { return depth_; }  // number of halvings from T to the leaves

    std::int64_t nodes_per_axis(int depth) const { return std::int64_t{1} << depth; }
    std::size_t node_count(int depth) const;
    int scale_at(int depth) const { return top_.k - depth; }

    std::int64_t leaves_per_axis() const { return nodes_per_axis(depth_); }
    std::size_t leaf_count() const { return node_count(depth_); }

    // Leaf (flat) containing the given thirds cell.
    std::size_t leaf_of_cell(std::size_t cell) const;
    // Node at `depth` containing the leaf.
    std::size_t ancestor(std::size_t leaf, int depth) const;

    DyadicCube node_cube(int depth, std::size_t node) const;
    Index2 unravel(int depth, std::size_t node) const;
    std::size_t ravel(int depth, const Index2& idx) const;

    // Thirds cells of the box inside a leaf (0 to 3^n of them).
    std::vector<std::size_t> leaf_cells(std::size_t leaf) const;

private:
    Domain thirds_;
    Shift shift_{1, 1};
    DyadicCube top_;
    int depth_ = 0;
    Index2 top_units_{0, 0};
    std::int64_t box_units_ = 0;  // 3 * 2^{S+J}
};

/**
 * Per-node sums over the frame, in cell units of the thirds grid: num = sum of
 * |f| W and den = sum of W, with f extended by 0 and W by 1 outside the box.
 * Unweighted trees use W = 1, so den counts cells. parent = sum of children.
 */
class DyadicTree {
public:
    static DyadicTree build(const GridFunction& f, const Shift& a);
    static DyadicTree build_weighted(const GridFunction& f, const GridFunction& weight, const Shift& a);

    const DyadicFrame& frame() const { return frame_; }
    double num(int depth, std::size_t node) const { return num_[depth][node]; }
    double den(int depth, std::size_t node) const { return den_[depth][node]; }
    double average(int depth, std::size_t node) const { return num_[depth][node] / den_[depth][node]; }

    // Per-leaf sup of averages over the ancestors with scale <= max_scale
    // (leaves above every admissible scale get 0).
    std::vector<double> leaf_maximal(int max_scale) const;
    // Same, spread over the thirds cells of the box.
    GridFunction maximal(int max_scale) const;

private:
    DyadicFrame frame_;
    std::vector<std::vector<double>> num_;
    std::vector<std::vector<double>> den_;
};

}  // namespace vexlab
