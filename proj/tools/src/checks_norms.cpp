#include <algorithm>
#include <cmath>
#include <limits>

#include "vexlab/dyadic.hpp"
#include "vexlab/extrapolation.hpp"
#include "vexlab/norms.hpp"
#include "vexlab/serialize.hpp"

#include "helpers.hpp"

namespace vexlab::cli {

namespace {

// Plain long-double bisection on log(lambda), 200 steps, against the modular
// summed directly; deliberately shares nothing with the library solver.
double brute_norm(const GridFunction& f, const VariableExponent& p, const GridFunction& w) {
    const Domain& d = f.domain();
    const long double vol = d.cell_volume();
    const auto rho = [&](long double lambda) {
        long double s = 0;
        for (std::size_t i = 0; i < f.values().size(); ++i)
            if (f[i] != 0.0) s += std::pow(std::abs(static_cast<long double>(f[i])) / lambda, static_cast<long double>(p[i])) * w[i] * vol;
        return s;
    };
    if (f.is_zero()) return 0.0;
    long double lo = -1, hi = 1;
    while (rho(std::exp(lo)) <= 1) lo *= 2;
    while (rho(std::exp(hi)) > 1) hi *= 2;
    for (int i = 0; i < 200; ++i) {
        const long double mid = 0.5L * (lo + hi);
        (rho(std::exp(mid)) > 1 ? lo : hi) = mid;
    }
    return static_cast<double>(std::exp(hi));
}

void luxemburg_oracle(const ExperimentConfig& c, CheckResult& r) {
    const Domain d = c.domain();
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const std::uint64_t s = c.seed * 1000 + static_cast<std::uint64_t>(i);
        const auto f = random_field(d, s, 0.0, 1.0 + i % 4);
        const auto p = random_exponent(d, s + 1, 1.05, 1.5 + 0.2 * (i % 15));
        const auto w = random_field(d, s + 2, 0.1, 10.0);
        const double got = luxemburg_norm(f, p, w).value, ref = brute_norm(f, p, w);
        const double delta = std::abs(got - ref) / ref;
        worst = std::max(worst, delta);
        r.rows.push_back({"random_" + std::to_string(i), delta});
    }
    const Instance in = make_instance(c);
    const auto probes = standard_probe_corpus(in.domain, in.w, in.p, c.seed);
    for (std::size_t i = 0; i < probes.size(); ++i) {
        const double got = luxemburg_norm(probes[i], in.p, in.w.values()).value;
        const double ref = brute_norm(probes[i], in.p, in.w.values());
        const double delta = std::abs(got - ref) / ref;
        worst = std::max(worst, delta);
        r.rows.push_back({"probe_" + std::to_string(i), delta});
    }
    r.metrics["max_relative_delta"] = worst;
    r.metrics["instances"] = r.rows.size();
    r.pass = worst <= limits::kOracleRel;
}

void holder(const ExperimentConfig& c, CheckResult& r) {
    const Domain d = c.domain();
    int violations = 0;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const std::uint64_t s = c.seed * 7000 + static_cast<std::uint64_t>(i);
        const double lo = 1.05 + 0.1 * (i % 5);
        const auto p = random_exponent(d, s, lo, lo + 0.3 + 0.4 * (i % 9));
        const auto rep = check_holder(random_field(d, s + 1, 0.0, 2.0), random_field(d, s + 2, 0.0, 3.0), p);
        if (rep.lhs > rep.rhs * (1 + limits::kHolderRel)) {
            if (violations++ == 0) r.witness = {{"instance", i}, {"report", rep}};
        }
        if (rep.rhs > 0.0) worst = std::max(worst, rep.lhs / rep.rhs);
        r.rows.push_back({"triple_" + std::to_string(i), rep.rhs > 0.0 ? rep.lhs / rep.rhs : 0.0});
    }
    const double rp = holder_constant(4.0 / 3.0, 4.0);
    r.metrics["violations"] = violations;
    r.metrics["max_lhs_over_rhs"] = worst;
    r.metrics["r_p_reference"] = rp;
    r.pass = violations == 0 && std::abs(rp - 1.5) <= 1e-14;
}

void chi_norm_equivalence(const ExperimentConfig& c, CheckResult& r) {
    const Domain d = c.domain();
    const auto p = resolve_exponent(c.exponent, d);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    std::size_t small = 0, large = 0;
    const StridePolicy policy = count_cubes(d, std::pow(2.0, d.dim() * (d.half_extent_log2() + 1))) > (1u << 16)
                                    ? StridePolicy::thinned(std::max<std::int64_t>(2, d.cells_per_axis() / 64))
                                    : StridePolicy::exhaustive();
    for_each_cube(d, std::pow(2.0, d.dim() * (d.half_extent_log2() + 1)), policy, [&](const Cube& q) {
        const auto e = check_chi_norm_equivalence(p, q);
        (e.small_cube ? small : large)++;
        if (e.ratio < lo || e.ratio > hi) r.witness = cube_json(d, q);
        lo = std::min(lo, e.ratio);
        hi = std::max(hi, e.ratio);
    });
    r.metrics["ratio_min"] = lo;
    r.metrics["ratio_max"] = hi;
    r.metrics["small_cubes"] = small;
    r.metrics["large_cubes"] = large;
    r.metrics["bound"] = limits::kChiEquivalence;
    r.pass = lo >= 1.0 / limits::kChiEquivalence && hi <= limits::kChiEquivalence;
    if (r.pass) r.witness = nullptr;
}

void modular_bracket(const ExperimentConfig& c, CheckResult& r) {
    const Domain d = c.domain();
    const auto p = resolve_exponent(c.exponent, d);
    int failures = 0;
    const Cube box{{0, 0}, d.cells_per_axis()};
    const Cube half{{d.cells_per_axis() / 4, d.dim() == 2 ? d.cells_per_axis() / 4 : 0}, d.cells_per_axis() / 2};
    for (int i = 0; i < 20; ++i) {
        const auto f = random_field(d, c.seed * 31 + static_cast<std::uint64_t>(i), 0.0, 0.5 + i);
        for (const Cube& omega : {box, half}) {
            const auto rep = check_norm_modular_bracket(f, p, omega);
            if (!rep.holds() && failures++ == 0) r.witness = {{"instance", i}, {"cube", cube_json(d, omega)}};
        }
    }
    r.metrics["failures"] = failures;
    r.metrics["instances"] = 40;
    r.pass = failures == 0;
}

void unit_ball(const ExperimentConfig& c, CheckResult& r) {
    const Instance in = make_instance(c);
    int failures = 0;
    const auto& w = in.w.values();
    for (int i = 0; i < 20; ++i) {
        const auto f = random_field(in.domain, c.seed * 53 + static_cast<std::uint64_t>(i), 0.0, 1.0 + i);
        const double n = luxemburg_norm(f, in.p, w).value;
        // ||g|| <= 1 iff rho(g) <= 1, probed at g = f s / ||f|| on both sides of 1.
        for (double s : {0.5, 1.0 - 1e-6, 1.0 + 1e-6, 2.0}) {
            const double rho = modular(f.scaled(s / n), in.p, w, 1.0);
            if ((s <= 1.0) != (rho <= 1.0 + 1e-12)) ++failures;
        }
    }
    r.metrics["failures"] = failures;
    r.pass = failures == 0;
}

void log_comparison(const ExperimentConfig& c, CheckResult& r) {
    const Domain d = c.domain();
    const auto s = decay_exponent(d, 2.0, 1.0);
    const auto t = VariableExponent::constant(d, 2.0);
    const auto mu = GridFunction::constant(d, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        const auto f = i == 0 ? GridFunction::constant(d, 0.5) : random_field(d, c.seed * 11 + static_cast<std::uint64_t>(i));
        const auto a = check_log_comparison(f, s, t, mu), b = check_log_comparison(f, t, s, mu);
        worst = std::max({worst, a.ratio(), b.ratio()});
        r.rows.push_back({"f_" + std::to_string(i), std::max(a.ratio(), b.ratio())});
    }
    r.metrics["max_ratio"] = worst;
    r.metrics["bound"] = limits::kLogComparison;
    r.pass = worst <= limits::kLogComparison;
}

void localization(const ExperimentConfig& c, CheckResult& r) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (int step = 0; step < 2; ++step) {
        const Domain d = c.with_level(c.level + step).domain();
        const auto p = resolve_exponent(c.exponent, d);
        const auto probes = standard_probe_corpus(d, Weight::constant(d, 1.0), p, c.seed);
        for (std::size_t i = 0; i < probes.size(); ++i) {
            const double ratio = luxemburg_norm(probes[i], p).value / localization_norm(probes[i], p);
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
            r.rows.push_back({"J" + std::to_string(d.level()) + "_probe_" + std::to_string(i), ratio});
        }
    }
    r.metrics["ratio_min"] = lo;
    r.metrics["ratio_max"] = hi;
    r.metrics["C"] = limits::kLocalizationC;
    r.pass = lo >= 1.0 / limits::kLocalizationC && hi <= limits::kLocalizationC;
}

// Integer-unit partition and nesting of every shifted grid over the box.
void partition_nesting(const ExperimentConfig& c, CheckResult& r) {
    const int dim = c.dim, level = c.level, s = c.half_extent_log2;
    const std::int64_t box = 3 * (std::int64_t{1} << (level + s));
    std::size_t checked = 0, bad = 0;
    for (const Shift& a : all_shifts(dim))
        for (int k = -level; k <= s + 1; ++k) {
            for (int axis = 0; axis < dim; ++axis) {
                const std::int64_t side = 3 * (std::int64_t{1} << (level + k));
                const std::int64_t m0 = dyadic_locate_units(a[axis], k, -box, level);
                const std::int64_t m1 = dyadic_locate_units(a[axis], k, box - 1, level);
                for (std::int64_t m = m0; m <= m1; ++m) {
                    ++checked;
                    const std::int64_t lo = dyadic_lower_units(a[axis], k, m, level);
                    if (dyadic_lower_units(a[axis], k, m + 1, level) != lo + side) ++bad;
                    if (dyadic_locate_units(a[axis], k, lo, level) != m ||
                        dyadic_locate_units(a[axis], k, lo + side - 1, level) != m)
                        ++bad;
                }
            }
            if (k == -level) continue;
            const Index2 lo_m = locate(a, dim, k, {-box, -box}, level).m;
            const Index2 hi_m = locate(a, dim, k, {box - 1, box - 1}, level).m;
            for (std::int64_t my = lo_m[1]; my <= (dim == 2 ? hi_m[1] : lo_m[1]); ++my)
                for (std::int64_t mx = lo_m[0]; mx <= hi_m[0]; ++mx) {
                    const DyadicCube q = dyadic_cube(a, dim, k, {mx, dim == 2 ? my : 0}, level);
                    const auto kids = children(q, level);
                    bool ok = kids.size() == (std::size_t{1} << dim);
                    std::int64_t vol = 0;
                    for (const auto& ch : kids) {
                        ok = ok && ch.k == k - 1 && parent(ch) == q;
                        std::int64_t v = 1;
                        for (int i = 0; i < dim; ++i) {
                            const std::int64_t cl = ch.lower_units(i, level), ql = q.lower_units(i, level);
                            ok = ok && cl >= ql && cl + ch.side_units(level) <= ql + q.side_units(level);
                            v *= ch.side_units(level);
                        }
                        vol += v;
                    }
                    const std::int64_t qs = q.side_units(level);
                    ok = ok && vol == (dim == 1 ? qs : qs * qs);
                    ++checked;
                    if (!ok) {
                        if (bad++ == 0) r.witness = q;
                    }
                }
        }
    r.metrics["checked"] = checked;
    r.metrics["mismatches"] = bad;
    r.pass = bad == 0;
}

void covering_lattice(const ExperimentConfig& c, CheckResult& r) {
    const Domain d = c.domain();
    const double max_volume = std::pow(1.0 / 6.0, d.dim());
    const bool exhaustive = count_cubes(d, max_volume) <= (1u << 20);
    std::size_t total = 0, covered = 0, none = 0;
    for_each_cube(d, max_volume, exhaustive ? StridePolicy::exhaustive() : StridePolicy::thinned(2), [&](const Cube& q) {
        ++total;
        const auto cov = covering_cube(d, q);
        if (!cov) {
            ++none;
            return;
        }
        const std::int64_t q_units = cell_units(d, q.corner[0] + q.side_cells) - cell_units(d, q.corner[0]);
        bool ok = cov->cube.volume() <= 1.0 && cov->cube.side_units(d.level()) <= 6 * q_units;
        for (int i = 0; i < d.dim(); ++i) {
            const std::int64_t lo = cell_units(d, q.corner[i]), hi = cell_units(d, q.corner[i] + q.side_cells);
            const std::int64_t rl = cov->cube.lower_units(i, d.level());
            ok = ok && rl <= lo && hi <= rl + cov->cube.side_units(d.level());
        }
        if (ok) ++covered;
        else if (r.witness.is_null()) r.witness = cube_json(d, q);
    });
    r.metrics["cubes"] = total;
    r.metrics["covered"] = covered;
    r.metrics["without_cover"] = none;
    r.metrics["exhaustive"] = exhaustive;
    r.pass = covered == total;
}

}  // namespace

void add_norm_checks(std::vector<Check>& out) {
    out.push_back({"norms", "luxemburg_oracle", "Luxemburg norm equals the root of the modular", luxemburg_oracle});
    out.push_back({"norms", "holder", "generalized Hoelder inequality with r_p = 1 + 1/p_- - 1/p_+", holder});
    out.push_back({"norms", "chi_norm_equivalence",
                   "||chi_Q|| ~ |Q|^{1/p(x)} for |Q| <= 1 and ~ |Q|^{1/p_inf} for |Q| >= 1", chi_norm_equivalence});
    out.push_back({"norms", "modular_bracket", "norm/modular bracketing by p_-(Omega) and p_+(Omega)", modular_bracket});
    out.push_back({"norms", "unit_ball", "||f|| <= 1 iff the modular of f is <= 1", unit_ball});
    out.push_back({"norms", "log_comparison", "modular comparison for exponents within C/log(e+|y|)", log_comparison});
    out.push_back({"norms", "localization", "norm equivalent to the l^{p_inf} sum over unit cubes", localization});
}

void add_dyadic_checks(std::vector<Check>& out) {
    out.push_back({"dyadic", "partition_nesting", "each D_{k,a} partitions space and nests dyadically", partition_nesting});
    out.push_back({"dyadic", "covering_lattice",
                   "every cube with side <= 1/6 lies in a cube of some D_a with side at most 6 times larger",
                   covering_lattice});
}

}  // namespace vexlab::cli
