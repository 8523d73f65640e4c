#pragma once

#include <cstdint>
#include <utility>

#include "vexlab/grid.hpp"

namespace vexlab {

struct LogHolderCertificate {
    double c_local = 0.0;     // max |p(x)-p(y)| * (-log|x-y|) over sampled pairs, 0 < |x-y| <= 1/2
    double c_infinity = 0.0;  // max |p(x)-p_inf| * log(e+|x|) over cells
    std::uint64_t pair_count = 0;
};

/**
 * Exponent field p(.) with 1 < p_- <= p_+ < inf and a declared limit p_inf.
 * The extrema are recomputed from the samples.
 */
class VariableExponent {
public:
    VariableExponent() = default;

    // UnsupportedExponent if any value is <= 1 or p_inf is outside (1, inf).
    static VariableExponent make(GridFunction values, double p_infinity);
    static VariableExponent constant(const Domain& d, double p);

    const GridFunction& values() const { return values_; }
    const Domain& domain() const { return values_.domain(); }
    double operator[](std::size_t i) const { return values_[i]; }

    double p_minus() const { return p_minus_; }
    double p_plus() const { return p_plus_; }
    double p_infinity() const { return p_infinity_; }
    bool is_constant() const { return p_minus_ == p_plus_; }

    // Same exponent brought onto `target` (its domain or the thirds refinement).
    VariableExponent on(const Domain& target) const;

private:
    GridFunction values_;
    double p_minus_ = 2.0;
    double p_plus_ = 2.0;
    double p_infinity_ = 2.0;
};

/// Exponent allowed to touch 1 (p >= 1), for the weak-type estimate only.
class RelaxedExponent {
public:
    RelaxedExponent() = default;
    static RelaxedExponent make(GridFunction values, double p_infinity);
    RelaxedExponent(const VariableExponent& p);  // NOLINT(google-explicit-constructor)

    const GridFunction& values() const { return values_; }
    const Domain& domain() const { return values_.domain(); }
    double p_minus() const { return p_minus_; }
    double p_plus() const { return p_plus_; }
    double p_infinity() const { return p_infinity_; }

private:
    GridFunction values_;
    double p_minus_ = 1.0;
    double p_plus_ = 1.0;
    double p_infinity_ = 1.0;
};

// p'(x) = p(x)/(p(x)-1), with p'_inf = p_inf/(p_inf-1).
VariableExponent conjugate(const VariableExponent& p);

double conjugate_value(double p);

std::pair<double, double> local_extrema(const VariableExponent& p, const Cube& q);

LogHolderCertificate check_log_holder(const VariableExponent& p, std::uint64_t seed = 0x5eed);

// Euclidean norm of a cell center.
double center_radius(const Domain& d, std::size_t cell);

// Standard profiles, sampled at cell centers.
VariableExponent two_piece_exponent(const Domain& d, double left, double right, double p_infinity);
// p_inf + amplitude * tanh(x_1) / log(e + |x|), log-Hoelder at 0 and at infinity.
VariableExponent lh_smooth_exponent(const Domain& d, double p_infinity = 2.0, double amplitude = 0.5);
// p_inf + c / log(e + |x|).
VariableExponent decay_exponent(const Domain& d, double p_infinity, double c);
// 1 on |x| <= 1/2, linear up to 2 at |x| = 3/2, then 2.
RelaxedExponent weak_profile_exponent(const Domain& d);

}  // namespace vexlab
