#pragma once

#include <cstddef>
#include <vector>

#include "vexlab/dyadic.hpp"
#include "vexlab/grid.hpp"
#include "vexlab/weights.hpp"

namespace vexlab {

/**
 * Stopping cube Q_j^k with its nutshell E_j^k. Sets of points are sets of
 * leaves of the dyadic frame (cubes of scale -J, all of equal measure), on
 * which M_D f is constant; leaf lists are sorted.
 */
struct SparseCube {
    DyadicCube cube;
    int depth = 0;          // depth in the frame tree
    std::size_t node = 0;   // node index at that depth
    double average = 0.0;   // m_Q(|f|)
    std::vector<std::size_t> nutshell;
};

struct SparseLevel {
    int k = 0;
    double threshold = 0.0;  // a^k
    std::vector<SparseCube> cubes;
};

struct SparseFamily {
    double a = 8.0;
    DyadicFrame frame;
    std::vector<SparseLevel> levels;  // increasing k, only nonempty levels
    std::vector<double> maximal;      // M_D f per frame leaf

    bool empty() const { return levels.empty(); }
    std::size_t cube_count() const;
    // Leaves of the frame covered by a node.
    std::vector<std::size_t> leaves(const SparseCube& q) const;
    std::size_t leaves_per_cube(const SparseCube& q) const;
};

double default_sparse_base(int dim);

// Stopping-time decomposition of M_D f over the levels a^k >= m_T(|f|), where
// T is the frame cube; DomainError unless a > 2^n.
SparseFamily sparse_decompose(const GridFunction& f, const Shift& a_shift, double a);
SparseFamily sparse_decompose(const GridFunction& f, double a);

struct SparseInvariants {
    bool disjoint = true;          // cubes of one level pairwise disjoint
    bool level_sets = true;        // union of level-k cubes = {M_D f > a^k}
    bool average_bracket = true;   // a^k < m_Q <= 2^n a^k
    bool nutshell_measure = true;  // E subset of Q, 2|E| >= |Q|, nutshells pairwise disjoint
    bool nutshell_partition = true;  // union of level-k nutshells = Omega_k \ Omega_{k+1}
    bool maximal_cubes = true;     // the parent of each stopping cube has average <= a^k
    bool all() const {
        return disjoint && level_sets && average_bracket && nutshell_measure && nutshell_partition && maximal_cubes;
    }
};

SparseInvariants verify_sparse_family(const SparseFamily& family, const GridFunction& f);

// max over leaves of Omega of M_D f / sum_{k,j} m_{Q_j^k} chi_{E_j^k}.
double sparse_domination_check(const SparseFamily& family);

struct CarlesonReport {
    double lhs = 0.0;  // sum (W(Q)^{-1} int_Q g W)^r W(Q)
    double rhs = 0.0;  // int g^r W
    double ratio() const { return rhs > 0.0 ? lhs / rhs : 0.0; }
};

// g is extended by 0 and W by 1 outside the box.
CarlesonReport carleson_sum_check(const SparseFamily& family, const GridFunction& g, const Weight& w, double r);

}  // namespace vexlab
