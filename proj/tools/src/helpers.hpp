#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "vexlab/exponent.hpp"
#include "vexlab/grid.hpp"

#include "registry.hpp"

namespace vexlab::cli {

// Tolerances shared by the suites.
namespace limits {
constexpr double kOracleRel = 1e-8;
constexpr double kHolderRel = 1e-9;
constexpr double kRefinement = 0.25;  // relative change allowed under J -> J+1
constexpr double kLocalizationC = 4.0;
constexpr double kChiEquivalence = 2.0;
constexpr double kLogComparison = 4.0;  // C for exponents within 1/log(e+|y|)
constexpr double kExtensionFactor = 4.0;
constexpr double kMirrorSlope = -0.5;
constexpr double kMirrorSlopeTol = 0.1;
constexpr double kRdfA1Slack = 1.01;
constexpr double kRdfTruncation = 0x1p-39;
constexpr double kDualIdentity = 1e-9;
constexpr double kDecayTail = 0.05;
constexpr int kSeriesTerms = 40;
}  // namespace limits

inline GridFunction random_field(const Domain& d, std::uint64_t seed, double lo = 0.0, double hi = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(d.cell_count());
    for (double& x : v) x = u(rng);
    return GridFunction(d, std::move(v));
}

inline VariableExponent random_exponent(const Domain& d, std::uint64_t seed, double lo, double hi) {
    return VariableExponent::make(random_field(d, seed, lo, hi), 0.5 * (lo + hi));
}

inline double relative_change(double a, double b) { return std::abs(b - a) / std::abs(a); }

// Records a J -> J+1 pair and returns whether it is finite and within kRefinement.
inline bool record_refinement(CheckResult& r, const std::string& key, double coarse, double fine) {
    const double change = relative_change(coarse, fine);
    r.metrics[key] = {{"coarse", coarse}, {"fine", fine}, {"relative_change", change}};
    return std::isfinite(coarse) && std::isfinite(fine) && change < limits::kRefinement;
}

}  // namespace vexlab::cli
