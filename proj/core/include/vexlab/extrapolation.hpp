#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vexlab/exponent.hpp"
#include "vexlab/grid.hpp"
#include "vexlab/maximal.hpp"
#include "vexlab/weights.hpp"

namespace vexlab {

struct OperatorNormEstimate {
    double lower = 0.0;  // max ratio over the probes
    double upper = 0.0;  // safety * lower
    int probes = 0;
    double safety = 2.0;
};

// Probes: indicators of distinguished dyadic cubes at four scales, sigma chi_Q
// profiles, decaying exponential bumps and seeded random fields.
std::vector<GridFunction> standard_probe_corpus(const Domain& d, const Weight& w, const VariableExponent& p,
                                                std::uint64_t seed, int random_count = 4);

OperatorNormEstimate estimate_operator_norm(const VariableExponent& p, const Weight& w, const MaximalSpec& spec,
                                            std::span<const GridFunction> probes, double safety = 2.0);

// M' h = w^{-1} M^loc(h w).
GridFunction dual_maximal(const GridFunction& h, const Weight& w);

// Norm estimate of M' on L^{p'}(w) over the probes.
OperatorNormEstimate estimate_dual_operator_norm(const VariableExponent& p, const Weight& w,
                                                 std::span<const GridFunction> probes, double safety = 2.0);

constexpr int kDefaultSeriesTerms = 40;

// sum_{k < terms} (M^loc)^k h / (2 B.upper)^k.
GridFunction rubio_de_francia(const GridFunction& h, const OperatorNormEstimate& b, int terms = kDefaultSeriesTerms);
// sum_{k < terms} (M')^k h / (2 B'.upper)^k.
GridFunction rubio_de_francia_dual(const GridFunction& h, const Weight& w, const OperatorNormEstimate& b,
                                   int terms = kDefaultSeriesTerms);

// max over cells of M^loc g / g, infinity when g vanishes where M^loc g does not.
double a1_quotient(const GridFunction& g);

struct RdfReport {
    bool pointwise = true;      // |h| <= R h
    double norm_ratio = 0.0;    // ||R h|| / ||h||
    bool norm_bound = true;     // norm_ratio <= 2 (1 + 1e-6)
    double a1 = 0.0;            // [R h]_{A1^loc}  (dual: [(R' h) w]_{A1^loc})
    double a1_bound = 0.0;      // 2 B.upper
    bool a1_holds = true;       // a1 <= 1.01 a1_bound
    bool all() const { return pointwise && norm_bound && a1_holds; }
};

RdfReport check_rdf_properties(const GridFunction& h, const VariableExponent& p, const Weight& w,
                               const OperatorNormEstimate& b, int terms = kDefaultSeriesTerms);
RdfReport check_rdf_dual_properties(const GridFunction& h, const VariableExponent& p, const Weight& w,
                                    const OperatorNormEstimate& b_dual, int terms = kDefaultSeriesTerms);

struct DualIdentity {
    double lhs = 0.0;  // ||M' h||_{L^{p'}(w)}
    double rhs = 0.0;  // ||M^loc(h w)||_{L^{p'}(sigma)}
    double relative_gap() const;
};

DualIdentity check_dual_identity(const GridFunction& h, const VariableExponent& p, const Weight& w);

struct ExtrapolationPair {
    GridFunction f;
    GridFunction g;
};

struct ExtrapolationRecord {
    double ratio = 0.0;             // ||f||_{L^p(w)} / ||g||_{L^p(w)}
    double pairing = 0.0;           // int f h w^{1/p} with the norming function h
    double i1 = 0.0;
    double i2 = 0.0;
    bool holder_chain = true;       // ||f|| <= pairing (1+1e-9) <= I1 I2 (1+1e-9)
    double w0_constant = 0.0;       // [(R h1)^{1-p0} (R'[h w^{-1/p'}]) w]_{A_p0^loc}
    double hypothesis_ratio = 0.0;  // (int f^p0 w0 / int g^p0 w0)^{1/p0}
};

struct ExtrapolationReport {
    std::vector<ExtrapolationRecord> records;
    int skipped = 0;  // pairs with ||g|| = 0
    double max_ratio = 0.0;
    double max_hypothesis_ratio = 0.0;
    bool holder_chain = true;
};

/**
 * For every pair: h1 = f/||f|| + g/||g||, the Rubio de Francia majorants of
 * h1 and of h w^{-1/p'}, where h = (|f| w^{1/p} / ||f||)^{p-1} is the explicit
 * function with ||h||_{p'} = 1 and int f h w^{1/p} = ||f||; then the two factors
 * I1, I2 and the A_p0 constant of the induced weight.
 */
ExtrapolationReport extrapolate_demo(std::span<const ExtrapolationPair> pairs, double p0, const VariableExponent& p,
                                     const Weight& w, const OperatorNormEstimate& b, const OperatorNormEstimate& b_dual,
                                     int terms = kDefaultSeriesTerms);

// (M^loc g, g) for each g.
std::vector<ExtrapolationPair> maximal_pairs(std::span<const GridFunction> gs);

struct VectorReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
};

VectorReport vector_valued_check(std::span<const GridFunction> fs, double q, const VariableExponent& p,
                                 const Weight& w, const MaximalSpec& spec);

// n translated bumps max(0, 1 - |x - c_i| / r) with centers spread over [-2^S/2, 2^S/2).
std::vector<GridFunction> shifted_bumps(const Domain& d, int count, double radius = 0.25);

}  // namespace vexlab
