#pragma once

#include <optional>
#include <span>
#include <vector>

#include "vexlab/dyadic.hpp"
#include "vexlab/exponent.hpp"
#include "vexlab/grid.hpp"
#include "vexlab/weights.hpp"

namespace vexlab {

// Volume caps: Global none, Local |Q| <= 1, LocalR |Q| <= R^n, Local6 |Q| <= 6^{-n}.
enum class Flavor { Global, Local, LocalR, Local6 };

struct MaximalSpec {
    Flavor flavor = Flavor::Local;
    double radius = 1.0;           // LocalR only; must be >= 1
    std::optional<Shift> dyadic;   // cubes of D_a instead of all grid-aligned cubes

    static MaximalSpec global() { return {Flavor::Global, 1.0, std::nullopt}; }
    static MaximalSpec local() { return {Flavor::Local, 1.0, std::nullopt}; }
    static MaximalSpec local_r(double r) { return {Flavor::LocalR, r, std::nullopt}; }
    static MaximalSpec local6() { return {Flavor::Local6, 1.0, std::nullopt}; }
    MaximalSpec on_grid(const Shift& a) const { return {flavor, radius, a}; }
};

double volume_cap(const MaximalSpec& spec, int dim);
// Largest admissible dyadic scale k (2^{kn} <= cap).
int dyadic_scale_cap(const MaximalSpec& spec, int dim);

/**
 * Per-cell sup of averages of |f| over the admissible cubes containing the
 * cell. Non-dyadic families use every grid-aligned cube inside the box with
 * a sliding-window sweep per side; dyadic families use DyadicTree and return
 * a function on the thirds domain (f extended by zero outside the box).
 */
GridFunction maximal(const GridFunction& f, const MaximalSpec& spec);

GridFunction compose_maximal(const GridFunction& f, const MaximalSpec& spec, int times);

// sup over cubes Q of the distinguished grid containing x of W(Q)^{-1} int_Q |f| W.
GridFunction weighted_dyadic_maximal(const GridFunction& f, const Weight& w, const Shift& a = distinguished_shift());

// Pointwise l^q norm of the maximal functions; q = infinity gives the pointwise max.
GridFunction vector_maximal(std::span<const GridFunction> fs, double q, const MaximalSpec& spec);

// Pointwise (sum |f_k|^q)^{1/q}.
GridFunction vector_magnitude(std::span<const GridFunction> fs, double q);

// ||t chi_{Mf > t}||_{p(.)} with the global maximal operator.
double weak_type_functional(const GridFunction& f, const RelaxedExponent& p, double t);
// Same with Mf already computed.
double weak_type_level(const GridFunction& mf, const RelaxedExponent& p, double t);

// ||M f||_{L^p(w)} / ||f||_{L^p(w)}; ContractViolation when ||f|| = 0.
double boundedness_ratio(const GridFunction& f, const VariableExponent& p, const Weight& w, const MaximalSpec& spec);

}  // namespace vexlab
