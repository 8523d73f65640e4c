#include <algorithm>
#include <cmath>
#include <limits>

#include "vexlab/extrapolation.hpp"
#include "vexlab/serialize.hpp"

#include "helpers.hpp"

namespace vexlab::cli {

namespace {

constexpr int kRandomProbes = 12;

void rubio_de_francia(const ExperimentConfig& c, CheckResult& r) {
    const Instance in = make_instance(c);
    const auto corpus = standard_probe_corpus(in.domain, in.w, in.p, c.seed, kRandomProbes);
    const auto b = estimate_operator_norm(in.p, in.w, MaximalSpec::local(), corpus);
    const auto b_dual = estimate_dual_operator_norm(in.p, in.w, corpus);
    int failures = 0;
    double worst_norm = 0.0, worst_a1 = 0.0;
    for (std::size_t i = 0; i < corpus.size(); ++i)
        for (int dual = 0; dual < 2; ++dual) {
            const auto rep = dual ? check_rdf_dual_properties(corpus[i], in.p, in.w, b_dual, limits::kSeriesTerms)
                                  : check_rdf_properties(corpus[i], in.p, in.w, b, limits::kSeriesTerms);
            worst_norm = std::max(worst_norm, rep.norm_ratio);
            worst_a1 = std::max(worst_a1, rep.a1 / rep.a1_bound);
            const bool ok = rep.pointwise && rep.norm_ratio <= 2.0 * (1 + limits::kRdfTruncation) &&
                            rep.a1 <= limits::kRdfA1Slack * rep.a1_bound;
            r.rows.push_back({std::string(dual ? "dual_" : "") + "probe_" + std::to_string(i), rep.norm_ratio});
            if (!ok && failures++ == 0) r.witness = {{"probe", i}, {"dual", dual == 1}, {"report", rep}};
        }
    r.metrics["B"] = b;
    r.metrics["B_dual"] = b_dual;
    r.metrics["max_norm_ratio"] = worst_norm;
    r.metrics["max_a1_over_bound"] = worst_a1;
    r.metrics["failures"] = failures;
    r.metrics["terms"] = limits::kSeriesTerms;
    r.pass = failures == 0;
}

void dual_operator(const ExperimentConfig& c, CheckResult& r) {
    double est[2], gap = 0.0;
    for (int step = 0; step < 2; ++step) {
        const Instance in = make_instance(c.with_level(c.level + step));
        const auto corpus = standard_probe_corpus(in.domain, in.w, in.p, c.seed, kRandomProbes);
        est[step] = estimate_dual_operator_norm(in.p, in.w, corpus).lower;
        if (step == 0)
            for (const auto& h : corpus) gap = std::max(gap, check_dual_identity(h, in.p, in.w).relative_gap());
    }
    r.metrics["max_identity_gap"] = gap;
    const bool stable = record_refinement(r, "dual_norm_estimate", est[0], est[1]);
    r.pass = gap <= limits::kDualIdentity && stable;
}

void extrapolation(const ExperimentConfig& c, CheckResult& r) {
    constexpr double p0 = 2.0;
    double ratio[2];
    bool chain = true;
    for (int step = 0; step < 2; ++step) {
        const Instance in = make_instance(c.with_level(c.level + step));
        const auto corpus = standard_probe_corpus(in.domain, in.w, in.p, c.seed, 4);
        const auto b = estimate_operator_norm(in.p, in.w, MaximalSpec::local(), corpus);
        const auto b_dual = estimate_dual_operator_norm(in.p, in.w, corpus);
        const auto pairs = maximal_pairs(corpus);
        const auto rep = extrapolate_demo(pairs, p0, in.p, in.w, b, b_dual, limits::kSeriesTerms);
        ratio[step] = rep.max_ratio;
        chain = chain && rep.holder_chain;
        if (step == 0) {
            r.metrics["max_hypothesis_ratio"] = rep.max_hypothesis_ratio;
            r.metrics["skipped"] = rep.skipped;
            for (std::size_t i = 0; i < rep.records.size(); ++i)
                r.rows.push_back({"pair_" + std::to_string(i), rep.records[i].ratio});
        }
    }
    r.metrics["p0"] = p0;
    r.metrics["holder_chain"] = chain;
    r.pass = chain && record_refinement(r, "max_ratio", ratio[0], ratio[1]);
}

bool vector_case(const ExperimentConfig& c, CheckResult& r, const std::string& key,
                 const std::function<std::pair<VariableExponent, Weight>(const Domain&)>& setup,
                 const MaximalSpec& spec) {
    const double qs[] = {1.5, 2.0, std::numeric_limits<double>::infinity()};
    bool ok = true;
    double scalar_gap = 0.0;
    for (double q : qs) {
        double m[2];
        for (int step = 0; step < 2; ++step) {
            const Domain d = c.with_level(c.level + step).domain();
            const auto [p, w] = setup(d);
            const auto bumps = shifted_bumps(d, 8);
            m[step] = vector_valued_check(bumps, q, p.on(w.domain()), w, spec).ratio;
            if (step == 0) {
                const std::vector<GridFunction> one = {bumps[3]};
                const double v = vector_valued_check(one, q, p.on(w.domain()), w, spec).ratio;
                const double s = boundedness_ratio(bumps[3], p.on(w.domain()), w, spec);
                scalar_gap = std::max(scalar_gap, std::abs(v - s) / s);
            }
        }
        const std::string qn = std::isinf(q) ? "inf" : std::to_string(q).substr(0, 3);
        ok = record_refinement(r, key + "_q" + qn, m[0], m[1]) && ok;
    }
    r.metrics["single_function_gap"] = scalar_gap;
    return ok && scalar_gap <= 1e-12;
}

void vector_valued_constant(const ExperimentConfig& c, CheckResult& r) {
    const double p_inf = resolve_exponent(c.exponent, c.domain()).p_infinity();
    r.metrics["p"] = p_inf;
    r.pass = vector_case(
        c, r, "constant_p",
        [&](const Domain& d) { return std::pair{VariableExponent::constant(d, p_inf), resolve_weight(c.weight, c.exponent, d)}; },
        MaximalSpec::local());
}

// Global operator with |x|^{-1/4}, which is a global A_p weight for every p > 1.
void vector_valued_global(const ExperimentConfig& c, CheckResult& r) {
    r.metrics["weight"] = "power -0.25";
    r.pass = vector_case(
        c, r, "global",
        [&](const Domain& d) { return std::pair{resolve_exponent(c.exponent, d), power_weight(d, -0.25)}; },
        MaximalSpec::global());
}

void vector_valued_local(const ExperimentConfig& c, CheckResult& r) {
    r.pass = vector_case(
        c, r, "local",
        [&](const Domain& d) { return std::pair{resolve_exponent(c.exponent, d), resolve_weight(c.weight, c.exponent, d)}; },
        MaximalSpec::local());
}

}  // namespace

void add_extrapolation_checks(std::vector<Check>& out) {
    out.push_back({"extrapolation", "rubio_de_francia",
                   "R h majorizes h, ||R h|| <= 2 ||h|| and [R h]_{A1^loc} <= 2 B, also for the dual series",
                   rubio_de_francia});
    out.push_back({"extrapolation", "dual_operator", "||M' h||_{L^p'(w)} = ||M^loc(h w)||_{L^p'(sigma)}, M' bounded",
                   dual_operator});
    out.push_back({"extrapolation", "extrapolation", "bounds in L^p0(w0) for all local A_p0 weights extrapolate to L^p(.)(w)",
                   extrapolation});
    out.push_back({"extrapolation", "vector_valued_constant", "vector-valued local maximal inequality, constant p",
                   vector_valued_constant});
    out.push_back({"extrapolation", "vector_valued_global", "vector-valued global maximal inequality, global A_p(.)",
                   vector_valued_global});
    out.push_back({"extrapolation", "vector_valued_local", "vector-valued local maximal inequality, A_p(.)^loc",
                   vector_valued_local});
}

}  // namespace vexlab::cli
