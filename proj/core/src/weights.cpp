#include "vexlab/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>

#include "vexlab/errors.hpp"
#include "vexlab/maximal.hpp"
#include "vexlab/norms.hpp"
#include "vexlab/parallel.hpp"

namespace vexlab {

namespace {

constexpr std::uint64_t kExhaustiveLimit = std::uint64_t{1} << 20;

Domain finer(const Domain& a, const Domain& b) {
    if (a == b) return a;
    if (a.coarse() != b.coarse()) throw DomainError("weight and exponent live on different domains");
    return a.is_thirds() ? a : b;
}

// ||chi_Q||_{L^p(w)} for many cubes: prefix sums when p is constant, the
// Newton solver on gathered cells otherwise.
class ChiEvaluator {
public:
    ChiEvaluator(const Domain& d, const GridFunction& w, const GridFunction& p)
        : d_(d), c_(d.cell_count()), p_(p.values().begin(), p.values().end()) {
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = w[i] * d.cell_volume();
        const auto [lo, hi] = std::minmax_element(p_.begin(), p_.end());
        constant_ = *lo == *hi;
        if (constant_) sums_.emplace(d, c_);
    }

    double operator()(const Cube& q) const {
        if (constant_) return std::pow(sums_->sum(q), 1.0 / p_.front());
        std::vector<double> c, p;
        c.reserve(q.cell_count(d_));
        p.reserve(q.cell_count(d_));
        for_each_cell(d_, q, [&](std::size_t i) {
            c.push_back(c_[i]);
            p.push_back(p_[i]);
        });
        return chi_norm_raw(c, p);
    }

private:
    Domain d_;
    std::vector<double> c_;
    std::vector<double> p_;
    bool constant_ = false;
    std::optional<CubeSums> sums_;
};

struct Best {
    double value = -std::numeric_limits<double>::infinity();
    std::size_t index = 0;
};

// Deterministic argmax over a list, independent of the thread count.
template <class F>
Best parallel_argmax(std::size_t n, F&& score) {
    Best best;
    std::mutex m;
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        Best local;
        for (std::size_t i = begin; i < end; ++i) {
            const double v = score(i);
            if (v > local.value) local = {v, i};
        }
        std::lock_guard lock(m);
        if (local.value > best.value || (local.value == best.value && local.index < best.index)) best = local;
    });
    return best;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

double Weight::clip(double v) {
    if (std::isnan(v)) return v;
    return std::clamp(v, 1e-300, 1e300);
}

Weight::Weight(const GridFunction& values) : values_(values) {
    for (double v : values_.values())
        if (!(v > 0.0)) throw DomainError("weights must be strictly positive");
    values_ = values_.map(clip);
}

Weight Weight::constant(const Domain& d, double c) { return Weight(GridFunction::constant(d, c)); }

Weight power_weight(const Domain& d, double alpha) {
    return Weight::sample(d, [alpha](Point x) { return std::pow(std::hypot(x[0], x[1]), alpha); });
}

Weight exponential_weight(const Domain& d, double beta) {
    return Weight::sample(d, [beta](Point x) { return std::exp(beta * std::hypot(x[0], x[1])); });
}

Weight dual_weight(const Weight& w, const VariableExponent& p) {
    if (!(p.p_minus() > 1.0)) throw UnsupportedExponent("dual weight needs p_- > 1");
    const Domain d = finer(w.domain(), p.domain());
    const GridFunction wv = on_domain(w.values(), d), pv = on_domain(p.values(), d);
    std::vector<double> out(d.cell_count());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = Weight::clip(std::exp(-std::log(wv[i]) / (pv[i] - 1.0)));
    return Weight(GridFunction(d, std::move(out)));
}

std::string family_name(CubeFamily f) {
    switch (f) {
        case CubeFamily::AllLocal: return "all_local";
        case CubeFamily::All: return "all";
        case CubeFamily::DyadicLocal: return "dyadic_local";
        case CubeFamily::DyadicAll: return "dyadic_all";
        case CubeFamily::LocalR: return "local_r";
    }
    return "unknown";
}

std::vector<Cube> dyadic_family(const Domain& d, double max_volume, const Shift& a) {
    const Domain t = d.thirds();
    const int level = t.level();
    const std::int64_t box = 3 * (std::int64_t{1} << (t.half_extent_log2() + level));
    std::vector<Cube> out;
    for (int k = -level;; ++k) {
        const std::int64_t side = 3 * (std::int64_t{1} << (level + k));
        if (side > 2 * box) break;
        if (std::ldexp(1.0, k * d.dim()) > max_volume * (1 + 1e-12)) break;
        std::array<std::vector<std::int64_t>, 2> lows;
        for (int i = 0; i < d.dim(); ++i) {
            const std::int64_t m0 = dyadic_locate_units(a[i], k, -box, level);
            const std::int64_t m1 = dyadic_locate_units(a[i], k, box - 1, level);
            for (std::int64_t m = m0; m <= m1; ++m) {
                const std::int64_t lo = dyadic_lower_units(a[i], k, m, level);
                if (lo >= -box && lo + side <= box) lows[i].push_back(lo + box);
            }
        }
        if (d.dim() == 1) {
            for (std::int64_t x : lows[0]) out.push_back(Cube{{x, 0}, side});
        } else {
            for (std::int64_t y : lows[1])
                for (std::int64_t x : lows[0]) out.push_back(Cube{{x, y}, side});
        }
    }
    return out;
}

double muckenhoupt_quotient(const Weight& w, const VariableExponent& p, const Cube& q) {
    const Domain d = finer(w.domain(), p.domain());
    const Weight ww = w.on(d);
    const VariableExponent pp = p.on(d);
    const Weight sigma = dual_weight(ww, pp);
    const VariableExponent pc = conjugate(pp);
    return chi_norm(pp, ww.values(), q) * chi_norm(pc, sigma.values(), q) / q.volume(d);
}

ConstantReport muckenhoupt_constant(const Weight& w, const VariableExponent& p, const FamilySpec& spec) {
    const bool dyadic = spec.family == CubeFamily::DyadicLocal || spec.family == CubeFamily::DyadicAll;
    Domain d = finer(w.domain(), p.domain());
    if (dyadic) d = d.thirds();
    const Weight ww = w.on(d);
    const VariableExponent pp = p.on(d);
    const Weight sigma = dual_weight(ww, pp);
    const VariableExponent pc = conjugate(pp);

    double cap = std::numeric_limits<double>::infinity();
    if (spec.family == CubeFamily::AllLocal || spec.family == CubeFamily::DyadicLocal) cap = 1.0;
    if (spec.family == CubeFamily::LocalR) {
        if (!(spec.radius >= 1.0)) throw ContractViolation("A^{loc,R} needs R >= 1");
        cap = std::pow(spec.radius, d.dim());
    }

    ConstantReport r;
    r.family = spec.family;
    r.cube_domain = d;
    std::vector<Cube> cubes;
    if (dyadic) {
        cubes = dyadic_family(d, cap);
    } else {
        StridePolicy policy = spec.policy;
        if (spec.auto_thin && policy.is_exhaustive() && count_cubes(d, cap) > kExhaustiveLimit)
            policy = StridePolicy::thinned(2);
        r.exhaustive = policy.is_exhaustive();
        cubes = enumerate_cubes(d, cap, policy);
    }
    if (cubes.empty()) throw ContractViolation("cube family is empty");
    const ChiEvaluator norm_w(d, ww.values(), pp.values());
    const ChiEvaluator norm_s(d, sigma.values(), pc.values());
    const Best best = parallel_argmax(cubes.size(), [&](std::size_t i) {
        return norm_w(cubes[i]) * norm_s(cubes[i]) / cubes[i].volume(d);
    });
    r.value = best.value;
    r.argmax = cubes[best.index];
    r.cubes_examined = cubes.size();
    return r;
}

ConstantReport muckenhoupt_constant(const Weight& w, const VariableExponent& p, CubeFamily family) {
    FamilySpec spec;
    spec.family = family;
    return muckenhoupt_constant(w, p, spec);
}

ConstantReport a1_local_constant(const Weight& w) {
    const GridFunction mw = maximal(w.values(), MaximalSpec::local());
    const Domain& d = w.domain();
    const Best best = parallel_argmax(d.cell_count(), [&](std::size_t i) { return mw[i] / w[i]; });
    ConstantReport r;
    r.value = best.value;
    r.argmax = Cube{d.unravel(best.index), 1};
    r.cube_domain = d;
    r.cubes_examined = count_cubes(d, 1.0);
    r.family = CubeFamily::AllLocal;
    return r;
}

AInfinityReport a_infinity_check(const Weight& w, double c1) {
    if (!(c1 > 0.0 && c1 < 1.0)) throw DomainError("A_infinity check needs 0 < C1 < 1");
    const Domain& d = w.domain();
    const std::int64_t n = d.cells_per_axis();
    std::vector<Cube> cubes;
    for (std::int64_t s = 1; s <= n; s *= 2) {
        const std::int64_t stride = std::max<std::int64_t>(1, s / 4);
        for (std::int64_t y = 0; y + s <= (d.dim() == 2 ? n : s); y += stride)
            for (std::int64_t x = 0; x + s <= n; x += stride) cubes.push_back(Cube{{x, d.dim() == 2 ? y : 0}, s});
    }
    const Best best = parallel_argmax(cubes.size(), [&](std::size_t i) {
        std::vector<double> vals;
        for_each_cell(d, cubes[i], [&](std::size_t c) { vals.push_back(w[c]); });
        const auto count = static_cast<std::size_t>(std::floor(c1 * static_cast<double>(vals.size()))) + 1;
        std::sort(vals.begin(), vals.end());
        double total = 0.0, part = 0.0;
        for (std::size_t j = 0; j < vals.size(); ++j) {
            total += vals[j];
            if (j < count) part += vals[j];
        }
        return -(part / total);
    });
    AInfinityReport r;
    r.c2_observed = -best.value;
    r.argmin = cubes[best.index];
    r.cubes_examined = cubes.size();
    return r;
}

DyadicCube base_cube(int dim) { return dyadic_cube(distinguished_shift(), dim, 0, {0, 0}, 0); }

Weight extend_weight(const Weight& w, const VariableExponent& p, const DyadicCube& unit_cube) {
    const Domain t = finer(w.domain(), p.domain()).thirds();
    if (unit_cube.k != 0 || unit_cube.dim != t.dim()) throw ContractViolation("extension needs a unit cube");
    for (int i = 0; i < t.dim(); ++i)
        if (unit_cube.shift[i] != 1) throw ContractViolation("extension cube must belong to the distinguished grid");
    const Cube q = to_grid_cube(unit_cube, t);
    if (!q.inside(t)) throw ContractViolation("extension cube must lie inside the box");
    const Weight wt = w.on(t);
    const VariableExponent pt = p.on(t);
    const double norm = chi_norm(pt, wt.values(), q);
    std::vector<double> out(t.cell_count());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = q.contains_cell(t, t.unravel(i)) ? wt[i] : Weight::clip(std::pow(norm, pt[i]));
    return Weight(GridFunction(t, std::move(out)));
}

double mirror_closed_product(double eps) {
    const double a = eps + 2.0 * std::sqrt(eps);
    const double b = eps + (2.0 / 3.0) * std::pow(eps, 1.5);
    return a * b / (4.0 * eps * eps);
}

MirrorReport mirror_counterexample(int level, int smallest_eps_log2) {
    const Domain d = Domain::make(1, 0, level);
    const Weight w = Weight::sample(d, [](Point x) { return x[0] > 0 ? 1.0 / std::sqrt(x[0]) : 1.0; });
    const GridFunction inv = w.values().map([](double v) { return 1.0 / v; });
    const CubeSums sw(w.values()), si(inv);
    MirrorReport r;
    std::vector<double> lx, lg, lc;
    for (int e = -2; e >= smallest_eps_log2; --e) {
        const double eps = std::ldexp(1.0, e);
        const Cube q = Cube::from_coordinates(d, {-eps, 0.0}, 2.0 * eps);
        const double cells = static_cast<double>(q.side_cells);
        const double prod = (sw.sum(q) / cells) * (si.sum(q) / cells);
        r.eps.push_back(eps);
        r.grid_product.push_back(prod);
        r.closed_product.push_back(mirror_closed_product(eps));
        lx.push_back(std::log(eps));
        lg.push_back(std::log(prod));
        lc.push_back(std::log(r.closed_product.back()));
    }
    r.grid_slope = least_squares_slope(lx, lg);
    r.closed_slope = least_squares_slope(lx, lc);
    const std::int64_t n = d.cells_per_axis(), half = n / 2;
    double best = 0.0;
    for (std::int64_t s = 1; s <= half; ++s)
        for (std::int64_t c = half; c + s <= n; ++c) {
            const Cube q{{c, 0}, s};
            const double cells = static_cast<double>(s);
            best = std::max(best, (sw.sum(q) / cells) * (si.sum(q) / cells));
        }
    r.right_half_constant = best;
    return r;
}

FactorReport factor_a1_pair(const Weight& w0, const Weight& w1, double p) {
    if (!(p > 1.0)) throw UnsupportedExponent("factorization needs p > 1");
    const GridFunction prod = w0.values() * w1.values().map([p](double v) { return std::pow(v, 1.0 - p); });
    FactorReport r;
    r.w = Weight(prod.map(Weight::clip));
    r.constant = muckenhoupt_constant(r.w, VariableExponent::constant(r.w.domain(), p), CubeFamily::AllLocal).value;
    r.a1_w0 = a1_local_constant(w0).value;
    r.a1_w1 = a1_local_constant(w1).value;
    r.bound = r.a1_w0 * std::pow(r.a1_w1, p - 1.0);
    r.holds = r.constant <= r.bound * (1.0 + 1e-9);
    return r;
}

double weight_of(const Weight& w, const std::vector<std::size_t>& cells) {
    double s = 0.0;
    for (std::size_t c : cells) s += w[c];
    return s * w.domain().cell_volume();
}

MeasureRatioReport check_measure_ratio(const Weight& w, const VariableExponent& p, const DyadicCube& q,
                                       const std::vector<std::size_t>& e, double a_constant) {
    if (e.empty()) throw ContractViolation("measure ratio needs a nonempty set");
    const Domain t = finer(w.domain(), p.domain()).thirds();
    const Weight wt = w.on(t);
    const VariableExponent pt = p.on(t);
    const Cube qc = to_grid_cube(q, t);
    if (!qc.inside(t)) throw ContractViolation("measure ratio cube must lie inside the box");
    std::vector<std::size_t> qcells;
    for_each_cell(t, qc, [&](std::size_t i) { qcells.push_back(i); });
    for (std::size_t c : e)
        if (!qc.contains_cell(t, t.unravel(c))) throw ContractViolation("E must be a subset of Q");
    MeasureRatioReport r;
    r.measure_ratio = static_cast<double>(e.size()) / static_cast<double>(qcells.size());
    const double ne = chi_norm_cells(pt, wt.values(), e);
    const double nq = chi_norm_cells(pt, wt.values(), qcells);
    r.norm_bound = 2.0 * a_constant * ne / nq;
    r.norm_bound_holds = r.measure_ratio <= r.norm_bound * (1.0 + 1e-9);
    const double we = weight_of(wt, e), wq = weight_of(wt, qcells);
    r.power_ratio = r.measure_ratio / std::pow(we / wq, 1.0 / p.p_plus());
    if (wq >= 1.0) r.large_norm_ratio = nq / std::pow(wq, 1.0 / p.p_infinity());
    if (we >= 1.0) r.large_power_ratio = r.measure_ratio / std::pow(we / wq, 1.0 / p.p_infinity());
    return r;
}

std::vector<DualExponentReport> check_dual_exponent(const Weight& w, const VariableExponent& p,
                                                    std::span<const Cube> cubes) {
    const Domain d = finer(w.domain(), p.domain());
    const Weight ww = w.on(d);
    const VariableExponent pp = p.on(d);
    const Weight sigma = dual_weight(ww, pp);
    const VariableExponent pc = conjugate(pp);
    std::vector<DualExponentReport> out(cubes.size());
    parallel_for(cubes.size(), [&](std::size_t begin, std::size_t end) {
        std::vector<std::size_t> cells;
        for (std::size_t k = begin; k < end; ++k) {
            const Cube& q = cubes[k];
            const double ns = chi_norm(pc, sigma.values(), q);
            const double pm = local_extrema(pp, q).first;
            cells.clear();
            for_each_cell(d, q, [&](std::size_t i) { cells.push_back(i); });
            const double sq = weight_of(sigma, cells);
            const double log_vol = std::log(q.volume(d));
            DualExponentReport& r = out[k];
            double integral = 0.0;
            for (std::size_t c : cells) {
                r.exponent_ratio = std::max(r.exponent_ratio, std::pow(ns, pm - pp[c]));
                integral += std::exp(pm * std::log(sq) - pp[c] * log_vol + std::log(ww[c]));
            }
            integral *= d.cell_volume();
            r.sigma_ratio = std::exp(pm * (std::log(sq) - std::log(ns)) - std::log(sq));
            r.integral_ratio = integral / sq;
        }
    });
    return out;
}

DualExponentReport check_dual_exponent(const Weight& w, const VariableExponent& p, const Cube& q) {
    return check_dual_exponent(w, p, std::span<const Cube>(&q, 1)).front();
}

double default_decay_exponent(int dim, double p_plus) { return dim * p_plus + dim + 1.0; }

double decay_integral(const Weight& w, double k) {
    if (!(k >= 0.0)) throw DomainError("decay exponent must be >= 0");
    const Domain& d = w.domain();
    double s = 0.0;
    for (std::size_t i = 0; i < d.cell_count(); ++i)
        s += w[i] * std::pow(std::numbers::e + center_radius(d, i), -k);
    return s * d.cell_volume();
}

}  // namespace vexlab
