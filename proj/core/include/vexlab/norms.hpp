#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "vexlab/exponent.hpp"
#include "vexlab/grid.hpp"

namespace vexlab {

struct NormResult {
    double value = 0.0;
    int bisection_iters = 0;
    double residual = 0.0;  // |modular(f/value) - 1|; 0 for f == 0
    bool converged = true;
};

// Integral of (|f|/lambda)^p w. DomainError unless lambda > 0.
double modular(const GridFunction& f, const VariableExponent& p, const GridFunction& w, double lambda);
double modular(const GridFunction& f, const VariableExponent& p, double lambda);

// Luxemburg norm by geometric bracketing and 60 bisection steps. The value
// returned is the upper end of the final bracket, so modular(f/value) <= 1.
NormResult luxemburg_norm(const GridFunction& f, const VariableExponent& p, const GridFunction& w);
NormResult luxemburg_norm(const GridFunction& f, const VariableExponent& p);
NormResult luxemburg_norm(const GridFunction& f, const RelaxedExponent& p, const GridFunction& w);

// Norm of the indicator of a set of cells in L^p(w). Solves
// sum_i w_i |cell| lambda^(-p_i) = 1 by Newton's method on the log-sum-exp
// form, which converges monotonically from below; used by the sup-over-cubes
// estimators where bisection would dominate the cost.
double chi_norm_cells(const VariableExponent& p, const GridFunction& w, std::span<const std::size_t> cells);
double chi_norm(const VariableExponent& p, const GridFunction& w, const Cube& q);
double chi_norm(const VariableExponent& p, const Cube& q);

// Same solver on raw per-cell data: c_i = w_i |cell| and exponents p_i.
double chi_norm_raw(std::span<const double> c, std::span<const double> p);

struct HolderReport {
    double lhs = 0.0;  // integral of |f g|
    double rhs = 0.0;  // r_p ||f||_p ||g||_p'
    double r_p = 1.0;
    bool holds = true;
};

double holder_constant(double p_minus, double p_plus);
HolderReport check_holder(const GridFunction& f, const GridFunction& g, const VariableExponent& p);

struct BracketCase {
    double scale = 1.0;  // f was multiplied by this before evaluation
    double norm = 0.0;
    double modular = 0.0;  // integral over the cube of |f|^p
    double lower = 0.0;
    double upper = 0.0;
    bool bracket_holds = true;
    bool unit_ball_iff = true;        // norm <= 1 exactly when modular <= 1
    bool modular_below_norm = true;   // modular <= norm when norm <= 1
};

struct BracketReport {
    double p_minus = 0.0;
    double p_plus = 0.0;
    BracketCase as_given;
    BracketCase small;  // rescaled so the norm is 1/2
    BracketCase large;  // rescaled so the norm is 2
    bool holds() const;
};

BracketReport check_norm_modular_bracket(const GridFunction& f, const VariableExponent& p, const Cube& omega);

struct ChiEquivalence {
    bool small_cube = true;  // |Q| <= 1: ratio = ||chi_Q|| / |Q|^{1/p(center)}
    double ratio = 1.0;      // otherwise ratio = ||chi_Q|| / |Q|^{1/p_inf}
};

ChiEquivalence check_chi_norm_equivalence(const VariableExponent& p, const Cube& q);

struct LogComparison {
    double lhs = 0.0;
    double rhs = 0.0;
    double modular_term = 0.0;
    double decay_term = 0.0;
    double exponent_gap = 0.0;  // max |s - r| log(e + |y|)
    double ratio() const;
};

// Both sides of the log-comparison inequality over the whole box with t = 1;
// the decay exponent defaults to n r_- . DomainError if f leaves [0, 1].
LogComparison check_log_comparison(const GridFunction& f, const VariableExponent& s, const VariableExponent& r,
                                   const GridFunction& mu, std::optional<double> decay_exponent = std::nullopt);

/**
 * (sum over Q of ||f chi_Q||^{p_inf})^{1/p_inf}, Q running over the unit cubes
 * [m - 1/3, m + 2/3)^n that meet the box (clipped to it). Evaluated on the
 * thirds refinement, where those cubes are unions of cells.
 */
double localization_norm(const GridFunction& f, const VariableExponent& p, const GridFunction& w);
double localization_norm(const GridFunction& f, const VariableExponent& p);

// Cell lists of the clipped unit cubes used by localization_norm (thirds domain).
std::vector<std::vector<std::size_t>> localization_cells(const Domain& thirds_domain);

}  // namespace vexlab
