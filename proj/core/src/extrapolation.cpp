#include "vexlab/extrapolation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "vexlab/errors.hpp"
#include "vexlab/norms.hpp"

namespace vexlab {

namespace {

GridFunction positive_part_floor(const GridFunction& g) {
    return g.map([](double v) { return std::max(v, 1e-300); });
}

double integral_of_product(std::initializer_list<const GridFunction*> parts) {
    const GridFunction& first = **parts.begin();
    double s = 0.0;
    for (std::size_t i = 0; i < first.size(); ++i) {
        double v = 1.0;
        for (const GridFunction* g : parts) v *= (*g)[i];
        s += v;
    }
    return s * first.domain().cell_volume();
}

}  // namespace

std::vector<GridFunction> standard_probe_corpus(const Domain& d, const Weight& w, const VariableExponent& p,
                                                std::uint64_t seed, int random_count) {
    std::vector<GridFunction> out;
    for (int k = -3; k <= 0; ++k) {
        if (k < -d.level() || k > d.half_extent_log2()) continue;
        out.push_back(GridFunction::indicator(d, Cube::from_coordinates(d, {0.0, 0.0}, std::ldexp(1.0, k))));
    }
    const Weight sigma = dual_weight(w.on(d), p.on(d));
    const double h = d.half_extent();
    for (double lower : {-0.5, h - 1.0}) {
        if (lower < -h || lower + 1.0 > h) continue;
        const Cube q = Cube::from_coordinates(d, {lower, lower}, 1.0);
        out.push_back(on_domain(sigma.values(), d) * GridFunction::indicator(d, q));
    }
    for (double c : {0.0, h / 2}) {
        out.push_back(GridFunction::sample(d, [c](Point x) { return std::exp(-2.0 * std::hypot(x[0] - c, x[1])); }));
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < random_count; ++i) {
        std::vector<double> v(d.cell_count());
        for (double& x : v) x = unit(rng);
        out.emplace_back(d, std::move(v));
    }
    return out;
}

OperatorNormEstimate estimate_operator_norm(const VariableExponent& p, const Weight& w, const MaximalSpec& spec,
                                            std::span<const GridFunction> probes, double safety) {
    if (probes.empty()) throw ContractViolation("operator norm estimate needs at least one probe");
    OperatorNormEstimate e;
    e.safety = safety;
    for (const auto& f : probes) {
        e.lower = std::max(e.lower, boundedness_ratio(f, p, w, spec));
        ++e.probes;
    }
    e.upper = e.lower * safety;
    return e;
}

GridFunction dual_maximal(const GridFunction& h, const Weight& w) {
    const Weight ww = w.on(h.domain());
    const GridFunction m = maximal(h * ww.values(), MaximalSpec::local());
    std::vector<double> out(m.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = m[i] / ww[i];
    return GridFunction(h.domain(), std::move(out));
}

OperatorNormEstimate estimate_dual_operator_norm(const VariableExponent& p, const Weight& w,
                                                 std::span<const GridFunction> probes, double safety) {
    if (probes.empty()) throw ContractViolation("operator norm estimate needs at least one probe");
    const VariableExponent pc = conjugate(p);
    OperatorNormEstimate e;
    e.safety = safety;
    for (const auto& h : probes) {
        const double denom = luxemburg_norm(h, pc, w.values()).value;
        if (!(denom > 0.0)) throw ContractViolation("probe with zero norm");
        e.lower = std::max(e.lower, luxemburg_norm(dual_maximal(h, w), pc, w.values()).value / denom);
        ++e.probes;
    }
    e.upper = e.lower * safety;
    return e;
}

GridFunction rubio_de_francia(const GridFunction& h, const OperatorNormEstimate& b, int terms) {
    if (terms < 1) throw ContractViolation("series needs at least one term");
    GridFunction term = h.abs();
    GridFunction sum = term;
    for (int k = 1; k < terms; ++k) {
        term = maximal(term, MaximalSpec::local()).scaled(1.0 / (2.0 * b.upper));
        sum = sum + term;
    }
    return sum;
}

GridFunction rubio_de_francia_dual(const GridFunction& h, const Weight& w, const OperatorNormEstimate& b, int terms) {
    if (terms < 1) throw ContractViolation("series needs at least one term");
    GridFunction term = h.abs();
    GridFunction sum = term;
    for (int k = 1; k < terms; ++k) {
        term = dual_maximal(term, w).scaled(1.0 / (2.0 * b.upper));
        sum = sum + term;
    }
    return sum;
}

double a1_quotient(const GridFunction& g) {
    const GridFunction m = maximal(g, MaximalSpec::local());
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i] > 0.0) worst = std::max(worst, m[i] / g[i]);
        else if (m[i] > 0.0) return std::numeric_limits<double>::infinity();
    }
    return worst;
}

RdfReport check_rdf_properties(const GridFunction& h, const VariableExponent& p, const Weight& w,
                               const OperatorNormEstimate& b, int terms) {
    const GridFunction r = rubio_de_francia(h, b, terms);
    RdfReport rep;
    for (std::size_t i = 0; i < h.size(); ++i)
        if (std::abs(h[i]) > r[i]) rep.pointwise = false;
    const double nh = luxemburg_norm(h, p, w.values()).value;
    rep.norm_ratio = nh > 0.0 ? luxemburg_norm(r, p, w.values()).value / nh : 0.0;
    rep.norm_bound = rep.norm_ratio <= 2.0 * (1.0 + 1e-6);
    rep.a1 = h.is_zero() ? 0.0 : a1_quotient(r);
    rep.a1_bound = 2.0 * b.upper;
    rep.a1_holds = rep.a1 <= rep.a1_bound * 1.01;
    return rep;
}

RdfReport check_rdf_dual_properties(const GridFunction& h, const VariableExponent& p, const Weight& w,
                                    const OperatorNormEstimate& b_dual, int terms) {
    const VariableExponent pc = conjugate(p);
    const GridFunction r = rubio_de_francia_dual(h, w, b_dual, terms);
    RdfReport rep;
    for (std::size_t i = 0; i < h.size(); ++i)
        if (std::abs(h[i]) > r[i]) rep.pointwise = false;
    const double nh = luxemburg_norm(h, pc, w.values()).value;
    rep.norm_ratio = nh > 0.0 ? luxemburg_norm(r, pc, w.values()).value / nh : 0.0;
    rep.norm_bound = rep.norm_ratio <= 2.0 * (1.0 + 1e-6);
    rep.a1 = h.is_zero() ? 0.0 : a1_quotient(r * w.on(h.domain()).values());
    rep.a1_bound = 2.0 * b_dual.upper;
    rep.a1_holds = rep.a1 <= rep.a1_bound * 1.01;
    return rep;
}

double DualIdentity::relative_gap() const {
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    return scale > 0.0 ? std::abs(lhs - rhs) / scale : 0.0;
}

DualIdentity check_dual_identity(const GridFunction& h, const VariableExponent& p, const Weight& w) {
    const VariableExponent pc = conjugate(p);
    const Weight ww = w.on(h.domain());
    const Weight sigma = dual_weight(ww, p.on(h.domain()));
    DualIdentity r;
    r.lhs = luxemburg_norm(dual_maximal(h, ww), pc, ww.values()).value;
    r.rhs = luxemburg_norm(maximal(h * ww.values(), MaximalSpec::local()), pc, sigma.values()).value;
    return r;
}

std::vector<ExtrapolationPair> maximal_pairs(std::span<const GridFunction> gs) {
    std::vector<ExtrapolationPair> out;
    for (const auto& g : gs) out.push_back({maximal(g, MaximalSpec::local()), g});
    return out;
}

ExtrapolationReport extrapolate_demo(std::span<const ExtrapolationPair> pairs, double p0, const VariableExponent& p,
                                     const Weight& w, const OperatorNormEstimate& b, const OperatorNormEstimate& b_dual,
                                     int terms) {
    if (!(p0 > 1.0)) throw UnsupportedExponent("extrapolation needs p0 > 1");
    const double p0c = conjugate_value(p0);
    ExtrapolationReport rep;
    for (const auto& pair : pairs) {
        const Domain& d = pair.f.domain();
        const Weight ww = w.on(d);
        const VariableExponent pp = p.on(d);
        const GridFunction f = pair.f.abs(), g = pair.g.abs();
        const double ng = luxemburg_norm(g, pp, ww.values()).value;
        if (!(ng > 0.0)) {
            ++rep.skipped;
            continue;
        }
        ExtrapolationRecord rec;
        const double nf = luxemburg_norm(f, pp, ww.values()).value;
        rec.ratio = nf / ng;
        if (nf > 0.0) {
            const GridFunction h1 = f.scaled(1.0 / nf) + g.scaled(1.0 / ng);
            const GridFunction rh1 = positive_part_floor(rubio_de_francia(h1, b, terms));
            std::vector<double> hv(d.cell_count()), dual_in(d.cell_count()), wp(d.cell_count());
            for (std::size_t i = 0; i < hv.size(); ++i) {
                const double pi = pp[i];
                wp[i] = std::pow(ww[i], 1.0 / pi);
                hv[i] = std::pow(f[i] * wp[i] / nf, pi - 1.0);
                dual_in[i] = hv[i] * std::pow(ww[i], -1.0 / conjugate_value(pi));
            }
            const GridFunction h(d, hv), wpow(d, wp);
            const GridFunction u = rubio_de_francia_dual(GridFunction(d, dual_in), ww, b_dual, terms);
            rec.pairing = integral_of_product({&f, &h, &wpow});
            const GridFunction rh1_pow = rh1.map([p0](double v) { return std::pow(v, 1.0 - p0); });
            const GridFunction fp0 = f.map([p0](double v) { return std::pow(v, p0); });
            const GridFunction gp0 = g.map([p0](double v) { return std::pow(v, p0); });
            rec.i1 = std::pow(integral_of_product({&fp0, &rh1_pow, &u, &ww.values()}), 1.0 / p0);
            rec.i2 = std::pow(integral_of_product({&rh1, &u, &ww.values()}), 1.0 / p0c);
            rec.holder_chain = nf <= rec.pairing * (1.0 + 1e-9) && rec.pairing <= rec.i1 * rec.i2 * (1.0 + 1e-9);
            const Weight w0(positive_part_floor(rh1_pow * u * ww.values()));
            rec.w0_constant =
                muckenhoupt_constant(w0, VariableExponent::constant(d, p0), CubeFamily::AllLocal).value;
            const double num = integral_of_product({&fp0, &w0.values()});
            const double den = integral_of_product({&gp0, &w0.values()});
            rec.hypothesis_ratio = den > 0.0 ? std::pow(num / den, 1.0 / p0) : 0.0;
        }
        rep.max_ratio = std::max(rep.max_ratio, rec.ratio);
        rep.max_hypothesis_ratio = std::max(rep.max_hypothesis_ratio, rec.hypothesis_ratio);
        rep.holder_chain = rep.holder_chain && rec.holder_chain;
        rep.records.push_back(rec);
    }
    return rep;
}

VectorReport vector_valued_check(std::span<const GridFunction> fs, double q, const VariableExponent& p,
                                 const Weight& w, const MaximalSpec& spec) {
    VectorReport r;
    r.lhs = luxemburg_norm(vector_maximal(fs, q, spec), p, w.values()).value;
    r.rhs = luxemburg_norm(vector_magnitude(fs, q), p, w.values()).value;
    if (!(r.rhs > 0.0)) throw ContractViolation("vector-valued ratio needs a nonzero family");
    r.ratio = r.lhs / r.rhs;
    return r;
}

std::vector<GridFunction> shifted_bumps(const Domain& d, int count, double radius) {
    std::vector<GridFunction> out;
    const double h = d.half_extent();
    for (int i = 0; i < count; ++i) {
        const double c = -h / 2 + (i + 0.5) * h / count;
        out.push_back(GridFunction::sample(
            d, [c, radius](Point x) { return std::max(0.0, 1.0 - std::hypot(x[0] - c, x[1]) / radius); }));
    }
    return out;
}

}  // namespace vexlab
