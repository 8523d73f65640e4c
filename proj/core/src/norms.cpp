#include "vexlab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "vexlab/errors.hpp"

namespace vexlab {

namespace {

constexpr double kTiny = 1e-300;
constexpr int kBisectionSteps = 60;

Domain finer(const Domain& a, const Domain& b) {
    if (a == b) return a;
    if (a.coarse() != b.coarse()) throw DomainError("grid functions live on different domains");
    return a.is_thirds() ? a : b;
}

struct Aligned {
    GridFunction f;
    GridFunction p;
    GridFunction w;
};

Aligned align(const GridFunction& f, const GridFunction& p, const GridFunction& w) {
    const Domain d = finer(finer(f.domain(), p.domain()), w.domain());
    return {on_domain(f, d), on_domain(p, d), on_domain(w, d)};
}

double modular_raw(std::span<const double> f, std::span<const double> p, std::span<const double> w, double vol,
                   double lambda) {
    const double log_lambda = std::log(lambda);
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double a = std::abs(f[i]);
        if (a == 0.0) continue;
        s += w[i] * std::exp(p[i] * (std::log(a) - log_lambda));
    }
    return s * vol;
}

NormResult norm_raw(std::span<const double> f, std::span<const double> p, std::span<const double> w, double vol,
                    double box_measure) {
    double sup = 0.0;
    for (double v : f) sup = std::max(sup, std::abs(v));
    if (sup == 0.0) return {};
    const auto rho = [&](double lambda) { return modular_raw(f, p, w, vol, lambda); };
    double hi = std::max(sup * (box_measure + 1.0), kTiny);
    NormResult r;
    while (rho(hi) > 1.0) hi *= 2.0;
    double lo = hi / 2.0;
    while (rho(lo) <= 1.0 && lo > kTiny) {
        hi = lo;
        lo /= 2.0;
    }
    for (; r.bisection_iters < kBisectionSteps; ++r.bisection_iters) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (rho(mid) > 1.0) lo = mid;
        else hi = mid;
    }
    r.value = hi;
    r.residual = std::abs(rho(hi) - 1.0);
    r.converged = (hi - lo) <= 1e-10 * hi;
    return r;
}

}  // namespace

double modular(const GridFunction& f, const VariableExponent& p, const GridFunction& w, double lambda) {
    if (!(lambda > 0.0)) throw DomainError("modular needs lambda > 0");
    const Aligned a = align(f, p.values(), w);
    return modular_raw(a.f.values(), a.p.values(), a.w.values(), a.f.domain().cell_volume(), lambda);
}

double modular(const GridFunction& f, const VariableExponent& p, double lambda) {
    return modular(f, p, GridFunction::constant(f.domain(), 1.0), lambda);
}

NormResult luxemburg_norm(const GridFunction& f, const VariableExponent& p, const GridFunction& w) {
    const Aligned a = align(f, p.values(), w);
    const Domain& d = a.f.domain();
    return norm_raw(a.f.values(), a.p.values(), a.w.values(), d.cell_volume(), d.box_volume());
}

NormResult luxemburg_norm(const GridFunction& f, const VariableExponent& p) {
    return luxemburg_norm(f, p, GridFunction::constant(f.domain(), 1.0));
}

NormResult luxemburg_norm(const GridFunction& f, const RelaxedExponent& p, const GridFunction& w) {
    const Aligned a = align(f, p.values(), w);
    const Domain& d = a.f.domain();
    return norm_raw(a.f.values(), a.p.values(), a.w.values(), d.cell_volume(), d.box_volume());
}

double chi_norm_raw(std::span<const double> c, std::span<const double> p) {
    double total = 0.0, pmin = std::numeric_limits<double>::infinity(), pmax = -pmin;
    for (std::size_t i = 0; i < c.size(); ++i) {
        total += c[i];
        pmin = std::min(pmin, p[i]);
        pmax = std::max(pmax, p[i]);
    }
    if (total <= 0.0) return 0.0;
    const double log_total = std::log(total);
    if (pmin == pmax) return std::exp(log_total / pmin);
    // G(t) = log sum c_i e^{-p_i t} is convex and decreasing; G(t0) >= 0 at
    // t0 below, so Newton iterates increase monotonically to the root.
    double t = std::min(log_total / pmax, log_total / pmin);
    for (int iter = 0; iter < 200; ++iter) {
        double m = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < c.size(); ++i)
            if (c[i] > 0.0) m = std::max(m, std::log(c[i]) - p[i] * t);
        double s = 0.0, sp = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] <= 0.0) continue;
            const double e = std::exp(std::log(c[i]) - p[i] * t - m);
            s += e;
            sp += p[i] * e;
        }
        const double g = m + std::log(s);
        const double step = g / (sp / s);
        t += step;
        if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(t))) break;
    }
    return std::exp(t);
}

double chi_norm_cells(const VariableExponent& p, const GridFunction& w, std::span<const std::size_t> cells) {
    const Domain d = finer(p.domain(), w.domain());
    const VariableExponent pp = p.on(d);
    const GridFunction ww = on_domain(w, d);
    std::vector<double> c(cells.size()), e(cells.size());
    for (std::size_t k = 0; k < cells.size(); ++k) {
        c[k] = ww[cells[k]] * d.cell_volume();
        e[k] = pp[cells[k]];
    }
    return chi_norm_raw(c, e);
}

double chi_norm(const VariableExponent& p, const GridFunction& w, const Cube& q) {
    const Domain d = finer(p.domain(), w.domain());
    std::vector<std::size_t> cells;
    cells.reserve(q.cell_count(d));
    for_each_cell(d, q, [&](std::size_t i) { cells.push_back(i); });
    return chi_norm_cells(p, w, cells);
}

double chi_norm(const VariableExponent& p, const Cube& q) {
    return chi_norm(p, GridFunction::constant(p.domain(), 1.0), q);
}

double holder_constant(double p_minus, double p_plus) { return 1.0 + 1.0 / p_minus - 1.0 / p_plus; }

HolderReport check_holder(const GridFunction& f, const GridFunction& g, const VariableExponent& p) {
    if (!(p.p_minus() > 1.0)) throw UnsupportedExponent("Hoelder check needs p_- > 1");
    HolderReport r;
    r.lhs = integrate((f * g).abs());
    r.r_p = holder_constant(p.p_minus(), p.p_plus());
    r.rhs = r.r_p * luxemburg_norm(f, p).value * luxemburg_norm(g, conjugate(p)).value;
    r.holds = r.lhs <= r.rhs * (1.0 + 1e-9);
    return r;
}

namespace {

BracketCase bracket_case(const GridFunction& f, const VariableExponent& p, const Cube& omega, double scale,
                         double pm, double pp) {
    BracketCase c;
    c.scale = scale;
    const GridFunction g = f.restricted(omega).scaled(scale);
    c.norm = luxemburg_norm(g, p).value;
    c.modular = modular(g, p, 1.0);
    const double lo_exp = c.norm <= 1.0 ? pp : pm;
    const double hi_exp = c.norm <= 1.0 ? pm : pp;
    c.lower = std::pow(c.norm, lo_exp);
    c.upper = std::pow(c.norm, hi_exp);
    constexpr double tol = 1e-9;
    c.bracket_holds = c.lower <= c.modular * (1 + tol) && c.modular <= c.upper * (1 + tol);
    // Near the unit sphere both sides of the iff are decided by rounding.
    const bool on_sphere = std::abs(c.norm - 1.0) <= tol || std::abs(c.modular - 1.0) <= tol;
    c.unit_ball_iff = on_sphere || ((c.norm <= 1.0) == (c.modular <= 1.0));
    c.modular_below_norm = c.norm > 1.0 || c.modular <= c.norm * (1 + tol);
    return c;
}

}  // namespace

bool BracketReport::holds() const {
    for (const BracketCase* c : {&as_given, &small, &large})
        if (!c->bracket_holds || !c->unit_ball_iff || !c->modular_below_norm) return false;
    return true;
}

BracketReport check_norm_modular_bracket(const GridFunction& f, const VariableExponent& p, const Cube& omega) {
    const Domain d = finer(f.domain(), p.domain());
    const GridFunction ff = on_domain(f, d);
    const VariableExponent pp = p.on(d);
    BracketReport r;
    std::tie(r.p_minus, r.p_plus) = local_extrema(pp, omega);
    r.as_given = bracket_case(ff, pp, omega, 1.0, r.p_minus, r.p_plus);
    const double n = r.as_given.norm;
    if (n > 0.0) {
        r.small = bracket_case(ff, pp, omega, 0.5 / n, r.p_minus, r.p_plus);
        r.large = bracket_case(ff, pp, omega, 2.0 / n, r.p_minus, r.p_plus);
    } else {
        r.small = r.large = r.as_given;
    }
    return r;
}

ChiEquivalence check_chi_norm_equivalence(const VariableExponent& p, const Cube& q) {
    const Domain& d = p.domain();
    const double vol = q.volume(d);
    ChiEquivalence r;
    r.small_cube = vol <= 1.0;
    const double norm = chi_norm(p, q);
    double exponent = p.p_infinity();
    if (r.small_cube) {
        // Center cell: for even sides the cell just above the midpoint.
        Index2 c = q.corner;
        for (int a = 0; a < d.dim(); ++a) c[a] += q.side_cells / 2;
        exponent = p[d.ravel(c)];
    }
    r.ratio = norm / std::pow(vol, 1.0 / exponent);
    return r;
}

double LogComparison::ratio() const {
    if (rhs > 0.0) return lhs / rhs;
    return lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

LogComparison check_log_comparison(const GridFunction& f, const VariableExponent& s, const VariableExponent& r,
                                   const GridFunction& mu, std::optional<double> decay_exponent) {
    const Domain d = finer(finer(finer(f.domain(), s.domain()), r.domain()), mu.domain());
    const GridFunction ff = on_domain(f, d), ss = on_domain(s.values(), d), rr = on_domain(r.values(), d),
                       mm = on_domain(mu, d);
    if (ff.min() < 0.0 || ff.max() > 1.0) throw DomainError("log comparison needs 0 <= f <= 1");
    const double k = decay_exponent.value_or(d.dim() * r.p_minus());
    LogComparison out;
    double lhs = 0.0, first = 0.0, decay = 0.0;
    for (std::size_t i = 0; i < ff.size(); ++i) {
        const double lg = std::log(std::numbers::e + center_radius(d, i));
        if (ff[i] > 0.0) {
            lhs += std::pow(ff[i], ss[i]) * mm[i];
            first += std::pow(ff[i], rr[i]) * mm[i];
        }
        decay += mm[i] * std::exp(-k * lg);
        out.exponent_gap = std::max(out.exponent_gap, std::abs(ss[i] - rr[i]) * lg);
    }
    const double v = d.cell_volume();
    out.lhs = lhs * v;
    out.modular_term = first * v;
    out.decay_term = decay * v;
    out.rhs = out.modular_term + out.decay_term;
    return out;
}

std::vector<std::vector<std::size_t>> localization_cells(const Domain& t) {
    if (!t.is_thirds()) throw DomainError("localization cubes need a thirds domain");
    // Unit cube [m - 1/3, m + 2/3) starts at thirds index (3m - 1 + 3 * 2^S) 2^J.
    const std::int64_t unit = 3 * (std::int64_t{1} << t.level());
    const std::int64_t n = t.cells_per_axis();
    const std::int64_t base = 3 * (std::int64_t{1} << (t.half_extent_log2() + t.level())) - (unit / 3);
    const std::int64_t offset = ((base % unit) + unit) % unit;
    const std::int64_t first = offset == 0 ? 0 : offset - unit;
    std::vector<std::int64_t> starts;
    for (std::int64_t s = first; s < n; s += unit) starts.push_back(s);
    const auto span_of = [&](std::int64_t s) { return std::pair{std::max<std::int64_t>(s, 0), std::min(s + unit, n)}; };
    std::vector<std::vector<std::size_t>> out;
    if (t.dim() == 1) {
        for (std::int64_t s : starts) {
            auto [a, b] = span_of(s);
            std::vector<std::size_t> cells;
            for (std::int64_t i = a; i < b; ++i) cells.push_back(static_cast<std::size_t>(i));
            if (!cells.empty()) out.push_back(std::move(cells));
        }
        return out;
    }
    for (std::int64_t sy : starts) {
        auto [ya, yb] = span_of(sy);
        for (std::int64_t sx : starts) {
            auto [xa, xb] = span_of(sx);
            std::vector<std::size_t> cells;
            for (std::int64_t y = ya; y < yb; ++y)
                for (std::int64_t x = xa; x < xb; ++x) cells.push_back(t.ravel({x, y}));
            if (!cells.empty()) out.push_back(std::move(cells));
        }
    }
    return out;
}

double localization_norm(const GridFunction& f, const VariableExponent& p, const GridFunction& w) {
    const Domain d = finer(finer(f.domain(), p.domain()), w.domain()).thirds();
    const GridFunction ff = on_domain(f, d), pp = on_domain(p.values(), d), ww = on_domain(w, d);
    double total = 0.0;
    for (const auto& cells : localization_cells(d)) {
        std::vector<double> fv, pv, wv;
        for (std::size_t i : cells) {
            fv.push_back(ff[i]);
            pv.push_back(pp[i]);
            wv.push_back(ww[i]);
        }
        const double piece =
            norm_raw(fv, pv, wv, d.cell_volume(), static_cast<double>(cells.size()) * d.cell_volume()).value;
        total += std::pow(piece, p.p_infinity());
    }
    return std::pow(total, 1.0 / p.p_infinity());
}

double localization_norm(const GridFunction& f, const VariableExponent& p) {
    return localization_norm(f, p, GridFunction::constant(f.domain(), 1.0));
}

}  // namespace vexlab
