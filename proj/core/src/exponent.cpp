#include "vexlab/exponent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "vexlab/errors.hpp"

namespace vexlab {

namespace {

std::pair<double, double> extrema(const GridFunction& f) { return {f.min(), f.max()}; }

double pair_quotient(const VariableExponent& p, std::size_t i, std::size_t j) {
    const Domain& d = p.domain();
    const Point x = d.center(i), y = d.center(j);
    const double dist = std::hypot(x[0] - y[0], x[1] - y[1]);
    if (dist <= 0.0 || dist > 0.5) return -1.0;
    return std::abs(p[i] - p[j]) * -std::log(dist);
}

}  // namespace

VariableExponent VariableExponent::make(GridFunction values, double p_infinity) {
    if (values.size() == 0) throw UnsupportedExponent("empty exponent field");
    VariableExponent p;
    std::tie(p.p_minus_, p.p_plus_) = extrema(values);
    if (!(p.p_minus_ > 1.0)) throw UnsupportedExponent("exponent must satisfy p_- > 1");
    if (!(p_infinity > 1.0) || !std::isfinite(p_infinity))
        throw UnsupportedExponent("limit exponent must lie in (1, inf)");
    p.p_infinity_ = p_infinity;
    p.values_ = std::move(values);
    return p;
}

VariableExponent VariableExponent::constant(const Domain& d, double p) {
    return make(GridFunction::constant(d, p), p);
}

VariableExponent VariableExponent::on(const Domain& target) const {
    if (target == domain()) return *this;
    VariableExponent r = *this;
    r.values_ = on_domain(values_, target);
    return r;
}

RelaxedExponent RelaxedExponent::make(GridFunction values, double p_infinity) {
    RelaxedExponent p;
    std::tie(p.p_minus_, p.p_plus_) = extrema(values);
    if (!(p.p_minus_ >= 1.0)) throw UnsupportedExponent("relaxed exponent must satisfy p >= 1");
    if (!(p_infinity >= 1.0) || !std::isfinite(p_infinity))
        throw UnsupportedExponent("limit exponent must lie in [1, inf)");
    p.p_infinity_ = p_infinity;
    p.values_ = std::move(values);
    return p;
}

RelaxedExponent::RelaxedExponent(const VariableExponent& p)
    : values_(p.values()), p_minus_(p.p_minus()), p_plus_(p.p_plus()), p_infinity_(p.p_infinity()) {}

double conjugate_value(double p) { return p / (p - 1.0); }

VariableExponent conjugate(const VariableExponent& p) {
    if (!(p.p_minus() > 1.0)) throw UnsupportedExponent("conjugate needs p_- > 1");
    return VariableExponent::make(p.values().map(conjugate_value), conjugate_value(p.p_infinity()));
}

std::pair<double, double> local_extrema(const VariableExponent& p, const Cube& q) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for_each_cell(p.domain(), q, [&](std::size_t i) {
        lo = std::min(lo, p[i]);
        hi = std::max(hi, p[i]);
    });
    return {lo, hi};
}

double center_radius(const Domain& d, std::size_t cell) {
    const Point x = d.center(cell);
    return std::hypot(x[0], x[1]);
}

LogHolderCertificate check_log_holder(const VariableExponent& p, std::uint64_t seed) {
    const Domain& d = p.domain();
    const std::size_t n = d.cell_count();
    LogHolderCertificate cert;
    const auto visit = [&](std::size_t i, std::size_t j) {
        const double q = pair_quotient(p, i, j);
        if (q < 0.0) return;
        ++cert.pair_count;
        cert.c_local = std::max(cert.c_local, q);
    };
    if (n <= (std::size_t{1} << 12)) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) visit(i, j);
    } else {
        // Adjacent cells carry the sharpest quotient for jumps; random pairs cover the rest.
        const std::int64_t m = d.cells_per_axis();
        for (std::size_t i = 0; i < n; ++i) {
            const Index2 a = d.unravel(i);
            if (a[0] + 1 < m) visit(i, d.ravel({a[0] + 1, a[1]}));
            if (d.dim() == 2 && a[1] + 1 < m) visit(i, d.ravel({a[0], a[1] + 1}));
        }
        std::mt19937_64 rng(seed);
        const double h = d.cell_side();
        const auto reach = static_cast<std::int64_t>(std::floor(0.5 / h));
        std::uniform_int_distribution<std::size_t> cell(0, n - 1);
        std::uniform_int_distribution<std::int64_t> offset(-reach, reach);
        for (int t = 0; t < 1000000; ++t) {
            const std::size_t i = cell(rng);
            Index2 b = d.unravel(i);
            b[0] += offset(rng);
            if (d.dim() == 2) b[1] += offset(rng);
            if (b[0] < 0 || b[0] >= m || b[1] < 0 || b[1] >= m) continue;
            visit(i, d.ravel(b));
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        cert.c_infinity = std::max(cert.c_infinity, std::abs(p[i] - p.p_infinity()) *
                                                        std::log(std::numbers::e + center_radius(d, i)));
    return cert;
}

VariableExponent two_piece_exponent(const Domain& d, double left, double right, double p_infinity) {
    return VariableExponent::make(GridFunction::sample(d, [&](Point x) { return x[0] > 0 ? right : left; }),
                                  p_infinity);
}

VariableExponent lh_smooth_exponent(const Domain& d, double p_infinity, double amplitude) {
    return VariableExponent::make(GridFunction::sample(d,
                                                       [&](Point x) {
                                                           const double r = std::hypot(x[0], x[1]);
                                                           return p_infinity + amplitude * std::tanh(x[0]) /
                                                                                   std::log(std::numbers::e + r);
                                                       }),
                                  p_infinity);
}

VariableExponent decay_exponent(const Domain& d, double p_infinity, double c) {
    return VariableExponent::make(GridFunction::sample(d,
                                                       [&](Point x) {
                                                           const double r = std::hypot(x[0], x[1]);
                                                           return p_infinity + c / std::log(std::numbers::e + r);
                                                       }),
                                  p_infinity);
}

RelaxedExponent weak_profile_exponent(const Domain& d) {
    return RelaxedExponent::make(GridFunction::sample(d,
                                                      [](Point x) {
                                                          const double r = std::hypot(x[0], x[1]);
                                                          return 1.0 + std::clamp(r - 0.5, 0.0, 1.0);
                                                      }),
                                 2.0);
}

}  // namespace vexlab
