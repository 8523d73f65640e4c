#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vexlab/dyadic.hpp"
#include "vexlab/exponent.hpp"
#include "vexlab/grid.hpp"

namespace vexlab {

/// Strictly positive grid function; samples are clipped into [1e-300, 1e300].
class Weight {
public:
    Weight() = default;
    explicit Weight(const GridFunction& values);  // DomainError on values <= 0

    static Weight constant(const Domain& d, double c);
    template <class F>
    static Weight sample(const Domain& d, F&& fn) {
        std::vector<double> v(d.cell_count());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = clip(fn(d.center(i)));
        return Weight(GridFunction(d, std::move(v)));
    }

    const GridFunction& values() const { return values_; }
    const Domain& domain() const { return values_.domain(); }
    double operator[](std::size_t i) const { return values_[i]; }
    Weight on(const Domain& target) const { return Weight(on_domain(values_, target)); }

    static double clip(double v);

private:
    GridFunction values_;
};

// |x|^alpha and e^{beta |x|} at cell centers.
Weight power_weight(const Domain& d, double alpha);
Weight exponential_weight(const Domain& d, double beta);

// sigma = w^{-1/(p-1)}, on the finer of the two domains.
Weight dual_weight(const Weight& w, const VariableExponent& p);

enum class CubeFamily { AllLocal, All, DyadicLocal, DyadicAll, LocalR };

std::string family_name(CubeFamily f);

struct FamilySpec {
    CubeFamily family = CubeFamily::AllLocal;
    double radius = 1.0;  // LocalR: |Q| <= radius^n
    StridePolicy policy = StridePolicy::exhaustive();
    bool auto_thin = true;  // thin non-dyadic families above 2^20 cubes
};

struct ConstantReport {
    double value = 0.0;
    Cube argmax;
    Domain cube_domain;
    std::uint64_t cubes_examined = 0;
    CubeFamily family = CubeFamily::AllLocal;
    bool exhaustive = true;
};

// Cubes of the distinguished grid lying inside the box, as cubes of the thirds domain.
std::vector<Cube> dyadic_family(const Domain& d, double max_volume, const Shift& a = distinguished_shift());

// sup over the family of |Q|^{-1} ||chi_Q||_{L^p(w)} ||chi_Q||_{L^p'(sigma)}.
ConstantReport muckenhoupt_constant(const Weight& w, const VariableExponent& p, const FamilySpec& family);
ConstantReport muckenhoupt_constant(const Weight& w, const VariableExponent& p, CubeFamily family);

// Same product for one cube.
double muckenhoupt_quotient(const Weight& w, const VariableExponent& p, const Cube& q);

// max over cells of (M^loc w)(x) / w(x).
ConstantReport a1_local_constant(const Weight& w);

struct AInfinityReport {
    double c2_observed = 1.0;  // min w(E)/w(Q) over sampled (Q, E), |E| > C1 |Q|
    Cube argmin;
    std::uint64_t cubes_examined = 0;
};

// For each sampled cube, E is the worst admissible set: the floor(C1 N) + 1
// cells of smallest weight. Cubes have power-of-two sides and corners on a
// side/4 stride.
AInfinityReport a_infinity_check(const Weight& w, double c1);

// w inside the unit distinguished cube I, ||chi_I||_{L^p(w)}^{p(x)} outside.
// ContractViolation unless I is a unit cube of the distinguished grid inside the box.
Weight extend_weight(const Weight& w, const VariableExponent& p, const DyadicCube& unit_cube);

// The unit cube of the distinguished grid containing the origin.
DyadicCube base_cube(int dim);

struct MirrorReport {
    std::vector<double> eps;
    std::vector<double> grid_product;    // avg(w) avg(1/w) over (-eps, eps) on the grid
    std::vector<double> closed_product;  // same in closed form
    double grid_slope = 0.0;             // least-squares log-log slope
    double closed_slope = 0.0;
    double right_half_constant = 0.0;    // sup over intervals inside (0, 1) on the grid
};

// w = t^{-1/2} on (0,1), 1 on (-1,0), sampled at the given level.
MirrorReport mirror_counterexample(int level = 12, int smallest_eps_log2 = -7);
double mirror_closed_product(double eps);

struct FactorReport {
    Weight w;
    double constant = 0.0;   // [w]_{A_p^loc}
    double a1_w0 = 0.0;
    double a1_w1 = 0.0;
    double bound = 0.0;      // [w0]_{A1^loc} [w1]_{A1^loc}^{p-1}
    bool holds = true;
};

FactorReport factor_a1_pair(const Weight& w0, const Weight& w1, double p);

struct MeasureRatioReport {
    double measure_ratio = 0.0;     // |E| / |Q|
    double norm_bound = 0.0;        // 2 [w] ||chi_E|| / ||chi_Q||
    bool norm_bound_holds = true;
    double power_ratio = 0.0;       // (|E|/|Q|) / (w(E)/w(Q))^{1/p_+}
    std::optional<double> large_norm_ratio;   // ||chi_Q|| / w(Q)^{1/p_inf} when w(Q) >= 1
    std::optional<double> large_power_ratio;  // (|E|/|Q|) / (w(E)/w(Q))^{1/p_inf} when w(E) >= 1
};

// E is a set of cells of the thirds domain inside Q; `a_constant` is the
// measured global dyadic constant of w.
MeasureRatioReport check_measure_ratio(const Weight& w, const VariableExponent& p, const DyadicCube& q,
                                       const std::vector<std::size_t>& e, double a_constant);

struct DualExponentReport {
    double exponent_ratio = 0.0;   // max over x in Q of ||chi_Q||_{p'(sigma)}^{p_-(Q) - p(x)}
    double sigma_ratio = 0.0;      // (sigma(Q)/||chi_Q||_{p'(sigma)})^{p_-(Q)} / sigma(Q), at most 1
    double integral_ratio = 0.0;   // int_Q sigma(Q)^{p_-(Q)} |Q|^{-p} w / sigma(Q)
};

DualExponentReport check_dual_exponent(const Weight& w, const VariableExponent& p, const Cube& q);
// Same for many cubes of the finer of the two domains, sharing sigma and p'.
std::vector<DualExponentReport> check_dual_exponent(const Weight& w, const VariableExponent& p,
                                                    std::span<const Cube> cubes);

// Integral of w / (e + |x|)^K over the box.
double decay_integral(const Weight& w, double k);
double default_decay_exponent(int dim, double p_plus);

// w(E) for a set of cells.
double weight_of(const Weight& w, const std::vector<std::size_t>& cells);

}  // namespace vexlab
