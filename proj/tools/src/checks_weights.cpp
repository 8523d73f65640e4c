#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "vexlab/serialize.hpp"
#include "vexlab/weights.hpp"

#include "helpers.hpp"

namespace vexlab::cli {

namespace {

// The jump exponent is not log-Hoelder; statements that assume it skip the
// refinement requirement for it and say so in the metrics.
bool log_holder(const ExperimentConfig& c) { return c.exponent.kind != "two-piece"; }

void ap_local_constant(const ExperimentConfig& c, CheckResult& r) {
    double v[2];
    for (int step = 0; step < 2; ++step) {
        const Instance in = make_instance(c.with_level(c.level + step));
        const auto rep = muckenhoupt_constant(in.w, in.p, CubeFamily::AllLocal);
        v[step] = rep.value;
        r.rows.push_back({"J" + std::to_string(c.level + step), rep.value});
        if (step == 0) r.witness = constant_report_json(rep);
    }
    const bool stable = record_refinement(r, "constant", v[0], v[1]);
    r.metrics["log_holder"] = log_holder(c);
    r.pass = std::isfinite(v[0]) && std::isfinite(v[1]) && (stable || !log_holder(c));
}

void r_independence(const ExperimentConfig& c, CheckResult& r) {
    double ratio[2] = {0, 0};
    bool monotone = true;
    for (int step = 0; step < 2; ++step) {
        const Instance in = make_instance(c.with_level(c.level + step));
        double prev = 0.0, first = 0.0;
        for (double radius : {1.0, 2.0, 3.0}) {
            FamilySpec spec;
            spec.family = CubeFamily::LocalR;
            spec.radius = radius;
            // Cubes up to R^n fill most of a 2D box; sample corners there.
            if (c.dim == 2) spec.policy = StridePolicy::thinned(std::max<std::int64_t>(2, in.domain.cells_per_axis() / 32));
            const double v = muckenhoupt_constant(in.w, in.p, spec).value;
            r.rows.push_back({"J" + std::to_string(c.level + step) + "_R" + std::to_string(int(radius)), v});
            monotone = monotone && v >= prev * (1 - 1e-12) && std::isfinite(v);
            if (radius == 1.0) first = v;
            prev = v;
        }
        ratio[step] = prev / first;
    }
    // [w]_{R=3} / [w]_{R=1} must stay bounded as the grid is refined.
    const bool stable = record_refinement(r, "ratio_R3_over_R1", ratio[0], ratio[1]);
    r.metrics["monotone_in_R"] = monotone;
    r.metrics["exhaustive"] = c.dim == 1;
    r.pass = monotone && (stable || !log_holder(c));
}

void a_infinity(const ExperimentConfig& c, CheckResult& r) {
    constexpr double c1 = 0.5;
    double v[2];
    for (int step = 0; step < 2; ++step) {
        const Instance in = make_instance(c.with_level(c.level + step));
        const auto rep = a_infinity_check(in.w, c1);
        v[step] = rep.c2_observed;
        if (step == 0) r.witness = cube_json(in.domain, rep.argmin);
        r.metrics["cubes_examined_J" + std::to_string(c.level + step)] = rep.cubes_examined;
    }
    r.metrics["C1"] = c1;
    const bool stable = record_refinement(r, "C2", v[0], v[1]);
    r.pass = v[0] > 0.0 && v[1] > 0.0 && stable;
}

Weight unextended_weight(const ExperimentConfig& c, const Domain& d) {
    const WeightSpec& s = c.weight.kind == "extended" ? *c.weight.base : c.weight;
    return resolve_weight(s, c.exponent, d);
}

void extension(const ExperimentConfig& c, CheckResult& r) {
    double ext[2], worst = 0.0;
    bool bounded = true;
    for (int step = 0; step < 2; ++step) {
        const Domain d = c.with_level(c.level + step).domain();
        const auto p = resolve_exponent(c.exponent, d);
        const Weight w = unextended_weight(c, d);
        const double local = muckenhoupt_constant(w, p, CubeFamily::DyadicLocal).value;
        const Weight wbar = extend_weight(w, p, base_cube(d.dim()));
        const auto rep = muckenhoupt_constant(wbar, p.on(wbar.domain()), CubeFamily::DyadicAll);
        ext[step] = rep.value;
        worst = std::max(worst, rep.value / local);
        bounded = bounded && rep.value <= limits::kExtensionFactor * local;
        r.rows.push_back({"J" + std::to_string(d.level()) + "_local", local});
        r.rows.push_back({"J" + std::to_string(d.level()) + "_extended", rep.value});
        if (step == 0) r.witness = constant_report_json(rep);
    }
    const bool stable = record_refinement(r, "extended_constant", ext[0], ext[1]);
    r.metrics["max_extended_over_local"] = worst;
    r.metrics["bound"] = limits::kExtensionFactor;
    r.metrics["log_holder"] = log_holder(c);
    r.pass = bounded && (stable || !log_holder(c));
}

void measure_ratio(const ExperimentConfig& c, CheckResult& r) {
    const Instance in = make_instance(c);
    const Domain t = in.domain.is_thirds() ? in.domain : in.domain.thirds();
    const double a_const = muckenhoupt_constant(in.w, in.p, CubeFamily::DyadicAll).value;
    std::vector<DyadicCube> cubes = {base_cube(c.dim)};
    for (const auto& ch : children(cubes[0], c.level)) cubes.push_back(ch);
    std::mt19937_64 rng(c.seed);
    int failures = 0, cases = 0;
    double worst = 0.0;
    for (const DyadicCube& q : cubes) {
        const Cube qc = to_grid_cube(q, t);
        if (!qc.inside(t)) continue;
        std::vector<std::size_t> cells;
        for_each_cell(t, qc, [&](std::size_t i) { cells.push_back(i); });
        for (double frac : {0.05, 0.25, 0.5, 1.0}) {
            std::shuffle(cells.begin(), cells.end(), rng);
            const auto n = std::max<std::size_t>(1, static_cast<std::size_t>(frac * static_cast<double>(cells.size())));
            std::vector<std::size_t> e(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(n));
            std::sort(e.begin(), e.end());
            const auto rep = check_measure_ratio(in.w, in.p, q, e, a_const);
            ++cases;
            worst = std::max(worst, rep.measure_ratio / rep.norm_bound);
            if (!rep.norm_bound_holds && failures++ == 0) r.witness = {{"cube", q}, {"fraction", frac}};
        }
    }
    r.metrics["dyadic_constant"] = a_const;
    r.metrics["cases"] = cases;
    r.metrics["failures"] = failures;
    r.metrics["max_measure_over_bound"] = worst;
    r.pass = cases > 0 && failures == 0;
}

// The extension of the configured weight (or the configured weight itself when
// it is already extended), which is in the global dyadic class.
Instance dyadic_class_instance(const ExperimentConfig& c) {
    const Domain d = c.domain();
    const auto p = resolve_exponent(c.exponent, d);
    const Weight wbar = extend_weight(unextended_weight(c, d), p, base_cube(d.dim()));
    return {wbar.domain(), p.on(wbar.domain()), wbar};
}

// The three estimates hold up to constants; their maxima over all dyadic cubes
// in the box must stay put under refinement.
void dual_exponent(const ExperimentConfig& c, CheckResult& r) {
    double worst[3][2] = {};
    const char* keys[3] = {"exponent_ratio", "sigma_ratio", "integral_ratio"};
    for (int step = 0; step < 2; ++step) {
        const Instance in = dyadic_class_instance(c.with_level(c.level + step));
        const Domain& t = in.domain;
        double best = 0.0;
        const auto cubes = dyadic_family(t.coarse(), t.box_volume());
        const auto reps = check_dual_exponent(in.w, in.p, cubes);
        for (std::size_t i = 0; i < cubes.size(); ++i) {
            const double v[3] = {reps[i].exponent_ratio, reps[i].sigma_ratio, reps[i].integral_ratio};
            for (int k = 0; k < 3; ++k) worst[k][step] = std::max(worst[k][step], v[k]);
            if (step == 0 && v[1] > best) best = v[1], r.witness = cube_json(t, cubes[i]);
        }
    }
    bool ok = true;
    for (int k = 0; k < 3; ++k) ok = record_refinement(r, keys[k], worst[k][0], worst[k][1]) && ok;
    r.pass = ok || !log_holder(c);
}

// Convergence is asserted for the global dyadic class, i.e. the extended weight
// and its dual; weights growing like e^{|x|} are local only and diverge. The
// box is doubled twice: the increments must shrink and the last stay < 5%.
void decay_integral_check(const ExperimentConfig& c, CheckResult& r) {
    const double k = default_decay_exponent(c.dim, resolve_exponent(c.exponent, c.domain()).p_plus());
    double v[2][3];
    for (int step = 0; step < 3; ++step) {
        const int s = c.half_extent_log2 + step;
        const Instance in = dyadic_class_instance(c.with_half_extent(s));
        v[0][step] = decay_integral(in.w, k);
        v[1][step] = decay_integral(dual_weight(in.w, in.p), k);
        r.rows.push_back({"w_S" + std::to_string(s), v[0][step]});
        r.rows.push_back({"sigma_S" + std::to_string(s), v[1][step]});
    }
    r.metrics["K"] = k;
    r.metrics["tail_bound"] = limits::kDecayTail;
    bool ok = true;
    for (int i = 0; i < 2; ++i) {
        const double d1 = v[i][1] - v[i][0], d2 = v[i][2] - v[i][1];
        const double tail = relative_change(v[i][1], v[i][2]);
        r.metrics[i == 0 ? "w" : "sigma"] = {{"values", {v[i][0], v[i][1], v[i][2]}}, {"last_doubling", tail}};
        ok = ok && std::isfinite(v[i][2]) && d2 <= d1 && tail <= limits::kDecayTail;
    }
    r.pass = ok;
}

void a1_factorization(const ExperimentConfig& c, CheckResult& r) {
    const Domain d = c.domain();
    const double p = resolve_exponent(c.exponent, d).p_infinity();
    const std::vector<std::pair<std::string, Weight>> a1 = {
        {"one", Weight::constant(d, 1.0)},
        {"power_-0.5", power_weight(d, -0.5)},
        {"exp_1", exponential_weight(d, 1.0)},
        {"exp_-1", exponential_weight(d, -1.0)},
    };
    int failures = 0;
    for (const auto& [n0, w0] : a1)
        for (const auto& [n1, w1] : a1) {
            const auto rep = factor_a1_pair(w0, w1, p);
            r.rows.push_back({n0 + "*" + n1 + "^(1-p)", rep.constant / rep.bound});
            if (!rep.holds && failures++ == 0)
                r.witness = {{"w0", n0}, {"w1", n1}, {"constant", rep.constant}, {"bound", rep.bound}};
        }
    r.metrics["p"] = p;
    r.metrics["pairs"] = a1.size() * a1.size();
    r.metrics["failures"] = failures;
    r.pass = failures == 0;
}

void mirror_extension(const ExperimentConfig& c, CheckResult& r) {
    (void)c;
    const auto rep = mirror_counterexample(12, -7);
    r.metrics["grid_slope"] = rep.grid_slope;
    r.metrics["closed_form_slope"] = rep.closed_slope;
    r.metrics["expected_slope"] = limits::kMirrorSlope;
    r.metrics["slope_tolerance"] = limits::kMirrorSlopeTol;
    r.metrics["right_half_constant"] = rep.right_half_constant;
    for (std::size_t i = 0; i < rep.eps.size(); ++i) {
        r.rows.push_back({"grid_eps_" + std::to_string(rep.eps[i]), rep.grid_product[i]});
        r.rows.push_back({"closed_eps_" + std::to_string(rep.eps[i]), rep.closed_product[i]});
    }
    // Over eps in 2^-2 .. 2^-7 the closed-form product has slope about -0.38, so
    // this band is missed by the exact function as well as by the grid.
    r.pass = std::abs(rep.grid_slope - limits::kMirrorSlope) <= limits::kMirrorSlopeTol &&
             std::isfinite(rep.right_half_constant);
}

}  // namespace

void add_weight_checks(std::vector<Check>& out) {
    out.push_back({"weights", "ap_local_constant", "[w]_{A_p(.)^loc} is finite and stable under refinement",
                   ap_local_constant});
    out.push_back({"weights", "r_independence", "A^{loc,R} constants for R = 1, 2, 3 are comparable", r_independence});
    out.push_back({"weights", "a_infinity", "|E| > C1 |Q| implies w(E) > C2 w(Q) on local cubes", a_infinity});
    out.push_back({"weights", "extension", "the extended weight is global dyadic A_p with constant <= 4 [w]_loc",
                   extension});
    out.push_back({"weights", "measure_ratio", "|E|/|Q| <= 2 [w] ||chi_E|| / ||chi_Q|| for E inside Q", measure_ratio});
    out.push_back({"weights", "dual_exponent", "sigma(Q)-power estimates on small cubes", dual_exponent});
    out.push_back({"weights", "decay_integral", "int w (e+|x|)^{-K} converges", decay_integral_check});
    out.push_back({"weights", "a1_factorization", "w0 w1^{1-p} is A_p^loc with [w] <= [w0]_{A1} [w1]_{A1}^{p-1}",
                   a1_factorization});
    out.push_back({"counterexample", "mirror_extension",
                   "mirror extension of t^{-1/2}: avg(w) avg(1/w) on (-eps, eps) grows like eps^{-1/2}",
                   mirror_extension});
}

}  // namespace vexlab::cli
