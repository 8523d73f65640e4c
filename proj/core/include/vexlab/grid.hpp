#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace vexlab {

using Index2 = std::array<std::int64_t, 2>;
using Point = std::array<double, 2>;

/**
 * Uniform discretization of the box [-2^S, 2^S)^n, n in {1, 2}.
 *
 * Cells have side 2^-J, or 2^-J / 3 on a "thirds" domain. Thirds domains are
 * the 3x refinement used whenever a function meets the shifted dyadic grids,
 * whose endpoints are multiples of 2^k / 3.
 *
 * Cells are stored row-major with axis 0 varying fastest:
 * flat = i[1] * cells_per_axis + i[0].
 */
class Domain {
public:
    Domain() = default;

    static Domain make(int dim, int half_extent_log2, int level);

    int dim() const { return dim_; }
    int half_extent_log2() const { return half_extent_log2_; }
    int level() const { return level_; }
    int subdivision() const { return subdivision_; }
    bool is_thirds() const { return subdivision_ == 3; }

    Domain thirds() const;
    Domain coarse() const;

    std::int64_t cells_per_axis() const {
        return std::int64_t{subdivision_} << (half_extent_log2_ + level_ + 1);
    }
    std::size_t cell_count() const;

    double half_extent() const;
    double cell_side() const;
    double cell_volume() const;
    double box_volume() const;

    // Coordinate of the lower edge of cell i along any axis.
    double edge(std::int64_t i) const;
    double cell_center(std::int64_t i) const;
    Point center(std::size_t flat) const;

    Index2 unravel(std::size_t flat) const;
    std::size_t ravel(const Index2& idx) const;

    // Axis index of the cell containing coordinate x; DomainError outside the box.
    std::int64_t axis_cell(double x) const;

    bool operator==(const Domain&) const = default;

private:
    Domain(int dim, int s, int j, int sub)
        : dim_(dim), half_extent_log2_(s), level_(j), subdivision_(sub) {}

    int dim_ = 1;
    int half_extent_log2_ = 0;
    int level_ = 0;
    int subdivision_ = 1;
};

/// Grid-aligned axis-parallel cube: lower corner cell index and side in cells.
struct Cube {
    Index2 corner{0, 0};
    std::int64_t side_cells = 1;

    double side_length(const Domain& d) const;
    double volume(const Domain& d) const;
    std::size_t cell_count(const Domain& d) const;
    bool inside(const Domain& d) const;
    bool contains_cell(const Domain& d, const Index2& idx) const;
    bool contains(const Domain& d, const Cube& other) const;

    // Cube with lower corner at coordinates `lower` and the given side length;
    // DomainError unless both are grid-aligned.
    static Cube from_coordinates(const Domain& d, const Point& lower, double side);

    auto operator<=>(const Cube&) const = default;
};

// Calls fn(flat) for every cell of Q (Q must lie inside d).
void for_each_cell(const Domain& d, const Cube& q, const std::function<void(std::size_t)>& fn);

/**
 * Real samples, one per cell, read as a piecewise-constant function that is
 * zero outside the box. Immutable once built; NaN and infinities are rejected.
 */
class GridFunction {
public:
    GridFunction() = default;
    GridFunction(Domain d, std::vector<double> values);

    static GridFunction constant(const Domain& d, double c);
    static GridFunction zeros(const Domain& d) { return constant(d, 0.0); }
    static GridFunction indicator(const Domain& d, const Cube& q);

    // Samples fn at cell centers.
    template <class F>
    static GridFunction sample(const Domain& d, F&& fn) {
        std::vector<double> v(d.cell_count());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(d.center(i));
        return GridFunction(d, std::move(v));
    }

    const Domain& domain() const { return domain_; }
    std::span<const double> values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

    double min() const;
    double max() const;
    double sup_abs() const;
    bool is_zero() const;

    template <class F>
    GridFunction map(F&& fn) const {
        std::vector<double> v(values_.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(values_[i]);
        return GridFunction(domain_, std::move(v));
    }

    GridFunction abs() const;
    GridFunction scaled(double c) const;
    GridFunction restricted(const Cube& q) const;

    friend GridFunction operator+(const GridFunction& a, const GridFunction& b);
    friend GridFunction operator*(const GridFunction& a, const GridFunction& b);

private:
    Domain domain_;
    std::vector<double> values_;
};

// Resamples f onto the thirds refinement of its domain (identity if already thirds).
GridFunction refine_thirds(const GridFunction& f);

// Brings f onto `target`, which must equal f's domain or be its thirds refinement.
GridFunction on_domain(const GridFunction& f, const Domain& target);

double integrate(const GridFunction& f, const Cube& q);
double integrate(const GridFunction& f);
double cube_average(const GridFunction& f, const Cube& q);

/// Plain sum of cell values over Q (the integral in units of cell volume).
double cell_sum(const GridFunction& f, const Cube& q);

/**
 * Cube enumeration policy. Exhaustive yields every grid-aligned cube. A corner
 * stride s > 1 keeps corners that are multiples of s on every axis and, when
 * include_dyadic is set, every standard dyadic cube (power-of-two side, corner
 * a multiple of the side).
 */
struct StridePolicy {
    std::int64_t corner_stride = 1;
    bool include_dyadic = true;

    static StridePolicy exhaustive() { return {1, true}; }
    static StridePolicy thinned(std::int64_t stride) { return {stride, true}; }
    bool is_exhaustive() const { return corner_stride <= 1; }
};

// Largest side (in cells) whose cube volume is <= max_volume; 0 when none.
std::int64_t max_side_cells(const Domain& d, double max_volume);

// Number of cubes an exhaustive enumeration would yield.
std::uint64_t count_cubes(const Domain& d, double max_volume);

void for_each_cube(const Domain& d, double max_volume, const StridePolicy& policy,
                   const std::function<void(const Cube&)>& fn);

std::vector<Cube> enumerate_cubes(const Domain& d, double max_volume,
                                  const StridePolicy& policy = StridePolicy::exhaustive());

/// Summed-area table for O(1) cube sums of a grid function.
class CubeSums {
public:
    explicit CubeSums(const GridFunction& f);
    CubeSums(const Domain& d, std::span<const double> values);

    double sum(const Cube& q) const;
    const Domain& domain() const { return domain_; }

private:
    Domain domain_;
    std::int64_t stride_ = 0;
    std::vector<double> table_;
};

}  // namespace vexlab
