#include "vexlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "vexlab/errors.hpp"

namespace vexlab {

namespace {

constexpr std::size_t kMaxCells = std::size_t{1} << 26;

bool is_integral(double v) { return std::abs(v - std::round(v)) <= 1e-9 * std::max(1.0, std::abs(v)); }

}  // namespace

Domain Domain::make(int dim, int half_extent_log2, int level) {
    if (dim != 1 && dim != 2) throw DomainError("domain dimension must be 1 or 2");
    if (level < 0) throw DomainError("grid level must be >= 0");
    if (half_extent_log2 + level < 0) throw DomainError("box must contain at least two cells per axis");
    const int bits = (half_extent_log2 + level + 1) * dim;
    if (bits > 26) throw DomainError("grid too large (more than 2^26 cells)");
    return Domain(dim, half_extent_log2, level, 1);
}

Domain Domain::thirds() const {
    if (subdivision_ == 3) return *this;
    if (cell_count() * (dim_ == 1 ? 3u : 9u) > kMaxCells * 9) throw DomainError("thirds refinement too large");
    return Domain(dim_, half_extent_log2_, level_, 3);
}

Domain Domain::coarse() const { return Domain(dim_, half_extent_log2_, level_, 1); }

std::size_t Domain::cell_count() const {
    const auto n = static_cast<std::size_t>(cells_per_axis());
    return dim_ == 1 ? n : n * n;
}

double Domain::half_extent() const { return std::ldexp(1.0, half_extent_log2_); }

double Domain::cell_side() const { return std::ldexp(1.0, -level_) / subdivision_; }

double Domain::cell_volume() const {
    const double h = cell_side();
    return dim_ == 1 ? h : h * h;
}

double Domain::box_volume() const {
    const double side = 2.0 * half_extent();
    return dim_ == 1 ? side : side * side;
}

double Domain::edge(std::int64_t i) const {
    return std::ldexp(static_cast<double>(i), -level_) / subdivision_ - half_extent();
}

double Domain::cell_center(std::int64_t i) const {
    return std::ldexp(static_cast<double>(2 * i + 1), -level_ - 1) / subdivision_ - half_extent();
}

Point Domain::center(std::size_t flat) const {
    const Index2 idx = unravel(flat);
    return {cell_center(idx[0]), dim_ == 2 ? cell_center(idx[1]) : 0.0};
}

Index2 Domain::unravel(std::size_t flat) const {
    const auto n = static_cast<std::size_t>(cells_per_axis());
    if (dim_ == 1) return {static_cast<std::int64_t>(flat), 0};
    return {static_cast<std::int64_t>(flat % n), static_cast<std::int64_t>(flat / n)};
}

std::size_t Domain::ravel(const Index2& idx) const {
    const auto n = static_cast<std::size_t>(cells_per_axis());
    if (dim_ == 1) return static_cast<std::size_t>(idx[0]);
    return static_cast<std::size_t>(idx[1]) * n + static_cast<std::size_t>(idx[0]);
}

std::int64_t Domain::axis_cell(double x) const {
    const double scaled = std::ldexp(x + half_extent(), level_) * subdivision_;
    const auto i = static_cast<std::int64_t>(std::floor(scaled));
    if (!(x >= -half_extent()) || i < 0 || i >= cells_per_axis())
        throw DomainError("coordinate " + std::to_string(x) + " lies outside the box");
    return i;
}

double Cube::side_length(const Domain& d) const { return static_cast<double>(side_cells) * d.cell_side(); }

double Cube::volume(const Domain& d) const {
    const double s = side_length(d);
    return d.dim() == 1 ? s : s * s;
}

std::size_t Cube::cell_count(const Domain& d) const {
    const auto s = static_cast<std::size_t>(side_cells);
    return d.dim() == 1 ? s : s * s;
}

bool Cube::inside(const Domain& d) const {
    if (side_cells < 1) return false;
    const std::int64_t n = d.cells_per_axis();
    for (int a = 0; a < d.dim(); ++a)
        if (corner[a] < 0 || corner[a] + side_cells > n) return false;
    return true;
}

bool Cube::contains_cell(const Domain& d, const Index2& idx) const {
    for (int a = 0; a < d.dim(); ++a)
        if (idx[a] < corner[a] || idx[a] >= corner[a] + side_cells) return false;
    return true;
}

bool Cube::contains(const Domain& d, const Cube& other) const {
    for (int a = 0; a < d.dim(); ++a)
        if (other.corner[a] < corner[a] || other.corner[a] + other.side_cells > corner[a] + side_cells)
            return false;
    return true;
}

Cube Cube::from_coordinates(const Domain& d, const Point& lower, double side) {
    const double scale = std::ldexp(1.0, d.level()) * d.subdivision();
    Cube q;
    for (int a = 0; a < d.dim(); ++a) {
        const double c = (lower[a] + d.half_extent()) * scale;
        if (!is_integral(c)) throw DomainError("cube corner is not grid-aligned");
        q.corner[a] = static_cast<std::int64_t>(std::llround(c));
    }
    const double s = side * scale;
    if (!is_integral(s) || s < 0.5) throw DomainError("cube side is not a positive multiple of the cell side");
    q.side_cells = static_cast<std::int64_t>(std::llround(s));
    if (!q.inside(d)) throw DomainError("cube lies outside the box");
    return q;
}

void for_each_cell(const Domain& d, const Cube& q, const std::function<void(std::size_t)>& fn) {
    if (!q.inside(d)) throw DomainError("cube lies outside the box");
    if (d.dim() == 1) {
        for (std::int64_t i = 0; i < q.side_cells; ++i) fn(static_cast<std::size_t>(q.corner[0] + i));
        return;
    }
    for (std::int64_t y = 0; y < q.side_cells; ++y)
        for (std::int64_t x = 0; x < q.side_cells; ++x) fn(d.ravel({q.corner[0] + x, q.corner[1] + y}));
}

GridFunction::GridFunction(Domain d, std::vector<double> values) : domain_(d), values_(std::move(values)) {
    if (values_.size() != domain_.cell_count())
        throw DomainError("grid function has " + std::to_string(values_.size()) + " values, domain needs " +
                          std::to_string(domain_.cell_count()));
    for (double v : values_)
        if (!std::isfinite(v)) throw DomainError("grid function values must be finite");
}

GridFunction GridFunction::constant(const Domain& d, double c) {
    return GridFunction(d, std::vector<double>(d.cell_count(), c));
}

GridFunction GridFunction::indicator(const Domain& d, const Cube& q) {
    std::vector<double> v(d.cell_count(), 0.0);
    for_each_cell(d, q, [&](std::size_t i) { v[i] = 1.0; });
    return GridFunction(d, std::move(v));
}

double GridFunction::min() const { return *std::min_element(values_.begin(), values_.end()); }
double GridFunction::max() const { return *std::max_element(values_.begin(), values_.end()); }

double GridFunction::sup_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

bool GridFunction::is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

GridFunction GridFunction::abs() const {
    return map([](double v) { return std::abs(v); });
}

GridFunction GridFunction::scaled(double c) const {
    return map([c](double v) { return c * v; });
}

GridFunction GridFunction::restricted(const Cube& q) const {
    std::vector<double> v(values_.size(), 0.0);
    for_each_cell(domain_, q, [&](std::size_t i) { v[i] = values_[i]; });
    return GridFunction(domain_, std::move(v));
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
    if (!(a.domain_ == b.domain_)) throw DomainError("grid functions live on different domains");
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values_[i] + b.values_[i];
    return GridFunction(a.domain_, std::move(v));
}

GridFunction operator*(const GridFunction& a, const GridFunction& b) {
    if (!(a.domain_ == b.domain_)) throw DomainError("grid functions live on different domains");
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values_[i] * b.values_[i];
    return GridFunction(a.domain_, std::move(v));
}

GridFunction refine_thirds(const GridFunction& f) {
    const Domain& d = f.domain();
    if (d.is_thirds()) return f;
    const Domain t = d.thirds();
    std::vector<double> v(t.cell_count());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Index2 r = t.unravel(i);
        v[i] = f[d.ravel({r[0] / 3, r[1] / 3})];
    }
    return GridFunction(t, std::move(v));
}

GridFunction on_domain(const GridFunction& f, const Domain& target) {
    if (f.domain() == target) return f;
    if (target.is_thirds() && f.domain().thirds() == target) return refine_thirds(f);
    throw DomainError("cannot resample grid function onto an unrelated domain");
}

double cell_sum(const GridFunction& f, const Cube& q) {
    double s = 0.0;
    for_each_cell(f.domain(), q, [&](std::size_t i) { s += f[i]; });
    return s;
}

double integrate(const GridFunction& f, const Cube& q) { return f.domain().cell_volume() * cell_sum(f, q); }

double integrate(const GridFunction& f) {
    double s = 0.0;
    for (double v : f.values()) s += v;
    return f.domain().cell_volume() * s;
}

double cube_average(const GridFunction& f, const Cube& q) { return integrate(f, q) / q.volume(f.domain()); }

std::int64_t max_side_cells(const Domain& d, double max_volume) {
    if (!(max_volume > 0.0)) return 0;
    const std::int64_t n = d.cells_per_axis();
    if (std::isinf(max_volume)) return n;
    const double h = d.cell_side();
    const double side = d.dim() == 1 ? max_volume : std::sqrt(max_volume);
    auto s = static_cast<std::int64_t>(std::min<double>(static_cast<double>(n), std::floor(side / h + 1e-9)));
    const auto vol = [&](std::int64_t k) {
        const double l = static_cast<double>(k) * h;
        return d.dim() == 1 ? l : l * l;
    };
    while (s > 0 && vol(s) > max_volume * (1.0 + 1e-12)) --s;
    while (s < n && vol(s + 1) <= max_volume * (1.0 + 1e-12)) ++s;
    return s;
}

std::uint64_t count_cubes(const Domain& d, double max_volume) {
    const std::int64_t n = d.cells_per_axis();
    const std::int64_t smax = max_side_cells(d, max_volume);
    std::uint64_t total = 0;
    for (std::int64_t s = 1; s <= smax; ++s) {
        const auto c = static_cast<std::uint64_t>(n - s + 1);
        total += d.dim() == 1 ? c : c * c;
    }
    return total;
}

void for_each_cube(const Domain& d, double max_volume, const StridePolicy& policy,
                   const std::function<void(const Cube&)>& fn) {
    const std::int64_t n = d.cells_per_axis();
    const std::int64_t smax = max_side_cells(d, max_volume);
    const std::int64_t stride = std::max<std::int64_t>(1, policy.corner_stride);
    for (std::int64_t s = 1; s <= smax; ++s) {
        const bool dyadic_side = policy.include_dyadic && (s & (s - 1)) == 0;
        const auto keep = [&](std::int64_t c) { return c % stride == 0 || (dyadic_side && c % s == 0); };
        if (d.dim() == 1) {
            for (std::int64_t c = 0; c + s <= n; ++c)
                if (keep(c)) fn(Cube{{c, 0}, s});
            continue;
        }
        for (std::int64_t y = 0; y + s <= n; ++y) {
            for (std::int64_t x = 0; x + s <= n; ++x) {
                const bool strided = x % stride == 0 && y % stride == 0;
                const bool dyadic = dyadic_side && x % s == 0 && y % s == 0;
                if (strided || dyadic) fn(Cube{{x, y}, s});
            }
        }
    }
}

std::vector<Cube> enumerate_cubes(const Domain& d, double max_volume, const StridePolicy& policy) {
    std::vector<Cube> out;
    for_each_cube(d, max_volume, policy, [&](const Cube& q) { out.push_back(q); });
    return out;
}

CubeSums::CubeSums(const GridFunction& f) : CubeSums(f.domain(), f.values()) {}

CubeSums::CubeSums(const Domain& d, std::span<const double> values) : domain_(d) {
    const std::int64_t n = d.cells_per_axis();
    stride_ = n + 1;
    if (d.dim() == 1) {
        table_.assign(static_cast<std::size_t>(n + 1), 0.0);
        for (std::int64_t i = 0; i < n; ++i) table_[i + 1] = table_[i] + values[i];
        return;
    }
    table_.assign(static_cast<std::size_t>(stride_ * stride_), 0.0);
    for (std::int64_t y = 0; y < n; ++y) {
        double row = 0.0;
        for (std::int64_t x = 0; x < n; ++x) {
            row += values[static_cast<std::size_t>(y * n + x)];
            table_[(y + 1) * stride_ + (x + 1)] = table_[y * stride_ + (x + 1)] + row;
        }
    }
}

double CubeSums::sum(const Cube& q) const {
    const std::int64_t x0 = q.corner[0], x1 = q.corner[0] + q.side_cells;
    if (domain_.dim() == 1) return table_[x1] - table_[x0];
    const std::int64_t y0 = q.corner[1], y1 = q.corner[1] + q.side_cells;
    return table_[y1 * stride_ + x1] - table_[y0 * stride_ + x1] - table_[y1 * stride_ + x0] +
           table_[y0 * stride_ + x0];
}

}  // namespace vexlab
