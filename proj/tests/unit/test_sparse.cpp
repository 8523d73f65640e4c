#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "vexlab/errors.hpp"
#include "vexlab/sparse.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace vexlab;

namespace {

std::set<std::size_t> union_of_level(const SparseFamily& fam, const SparseLevel& lvl) {
    std::set<std::size_t> out;
    for (const auto& q : lvl.cubes)
        for (std::size_t leaf : fam.leaves(q)) out.insert(leaf);
    return out;
}

// Every box cell sits in the level-k union exactly when brute-force M_D f > a^k.
void check_against_brute(const SparseFamily& fam, const GridFunction& f, const Shift& a) {
    const auto brute = oracle::brute_dyadic_maximal(f, a, fam.frame.top_scale());
    for (const auto& lvl : fam.levels) {
        const auto u = union_of_level(fam, lvl);
        for (std::size_t c = 0; c < brute.size(); ++c) {
            const bool in = u.count(fam.frame.leaf_of_cell(c)) > 0;
            REQUIRE(in == (brute[c] > lvl.threshold));
        }
    }
}

}  // namespace

TEST_CASE("zero function gives the empty family") {
    const Domain d = Domain::make(1, 0, 6);
    const auto fam = sparse_decompose(GridFunction::zeros(d), 8.0);
    CHECK(fam.empty());
    CHECK(fam.cube_count() == 0);
    CHECK(verify_sparse_family(fam, GridFunction::zeros(d)).all());
    const auto rep = carleson_sum_check(fam, GridFunction::constant(d, 1.0), Weight::constant(d, 1.0), 2.0);
    CHECK(rep.lhs == 0.0);
}

TEST_CASE("base must exceed 2^n") {
    const Domain d1 = Domain::make(1, 0, 5);
    const auto f1 = testing::random_function(d1, 3, 0.0, 1.0);
    CHECK_THROWS_AS(sparse_decompose(f1, 2.0), DomainError);
    CHECK_THROWS_AS(sparse_decompose(f1, 1.5), DomainError);
    CHECK_NOTHROW(sparse_decompose(f1, 2.5));
    const Domain d2 = Domain::make(2, 0, 3);
    const auto f2 = testing::random_function(d2, 3, 0.0, 1.0);
    CHECK_THROWS_AS(sparse_decompose(f2, 4.0), DomainError);
    CHECK(default_sparse_base(1) == 8.0);
    CHECK(default_sparse_base(2) == 16.0);
}

TEST_CASE("indicator of a unit dyadic cube matches brute-force level sets") {
    const Domain d = Domain::make(1, 1, 6);
    const Shift a = distinguished_shift();
    // The unit cube of D_a at k = 0 containing the origin.
    const DyadicCube q0 = dyadic_cube(a, 1, 0, {0, 0}, d.level());
    const Cube g = to_grid_cube(q0, d.thirds());
    const auto f = GridFunction::indicator(d.thirds(), g);
    const auto fam = sparse_decompose(f, a, 8.0);
    REQUIRE_FALSE(fam.empty());
    CHECK(verify_sparse_family(fam, f).all());
    check_against_brute(fam, f, a);
    // M_D f <= 1, so no level reaches a^k >= 1.
    for (const auto& lvl : fam.levels) CHECK(lvl.threshold < 1.0);
}

TEST_CASE("random functions satisfy every invariant") {
    const Domain d = Domain::make(1, 0, 8);
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        CAPTURE(seed);
        const auto f = seed % 2 ? testing::random_function(d, seed, 0.0, 1.0)
                                : testing::random_spiky_function(d, seed);
        const auto fam = sparse_decompose(f, 8.0);
        const auto inv = verify_sparse_family(fam, f);
        CHECK(inv.disjoint);
        CHECK(inv.level_sets);
        CHECK(inv.average_bracket);
        CHECK(inv.nutshell_measure);
        CHECK(inv.nutshell_partition);
        CHECK(inv.maximal_cubes);
        CHECK(sparse_domination_check(fam) <= 8.0 * (1 + 1e-12));
    }
}

TEST_CASE("level sets agree with brute force under every shift") {
    const Domain d = Domain::make(1, 0, 7);
    for (const Shift& a : all_shifts(1)) {
        const auto f = testing::random_spiky_function(d, 11 + a[0]);
        const auto fam = sparse_decompose(f, a, 8.0);
        CHECK(verify_sparse_family(fam, f).all());
        check_against_brute(fam, f, a);
    }
}

TEST_CASE("two-dimensional decomposition") {
    const Domain d = Domain::make(2, 0, 4);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const auto f = testing::random_spiky_function(d, seed, 4);
        const auto fam = sparse_decompose(f, 16.0);
        CHECK(verify_sparse_family(fam, f).all());
        CHECK(sparse_domination_check(fam) <= 16.0 * (1 + 1e-12));
        check_against_brute(fam, f, distinguished_shift());
    }
}

TEST_CASE("decomposition is deterministic") {
    const Domain d = Domain::make(1, 0, 7);
    const auto f = testing::random_spiky_function(d, 5);
    const auto a = sparse_decompose(f, 8.0);
    const auto b = sparse_decompose(f, 8.0);
    REQUIRE(a.levels.size() == b.levels.size());
    for (std::size_t i = 0; i < a.levels.size(); ++i) {
        REQUIRE(a.levels[i].cubes.size() == b.levels[i].cubes.size());
        for (std::size_t j = 0; j < a.levels[i].cubes.size(); ++j) {
            CHECK(a.levels[i].cubes[j].node == b.levels[i].cubes[j].node);
            CHECK(a.levels[i].cubes[j].average == b.levels[i].cubes[j].average);
            CHECK(a.levels[i].cubes[j].nutshell == b.levels[i].cubes[j].nutshell);
        }
    }
}

TEST_CASE("nutshells carry half their cube") {
    const Domain d = Domain::make(1, 0, 8);
    const auto f = testing::random_spiky_function(d, 21);
    const auto fam = sparse_decompose(f, 8.0);
    for (const auto& lvl : fam.levels)
        for (const auto& q : lvl.cubes) CHECK(2 * q.nutshell.size() >= fam.leaves_per_cube(q));
}

TEST_CASE("Carleson sums") {
    const Domain d = Domain::make(1, 0, 8);
    const Weight one = Weight::constant(d, 1.0);
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const auto f = testing::random_spiky_function(d, seed);
        const auto fam = sparse_decompose(f, 8.0);
        const auto g = testing::random_function(d, seed + 100, 0.0, 1.0);
        const auto rep = carleson_sum_check(fam, g, one, 2.0);
        CAPTURE(seed);
        CHECK(rep.rhs > 0.0);
        CHECK(rep.ratio() <= 8.0);
    }

    SUBCASE("g = 1 with W = 1 is bounded by twice the frame measure") {
        const auto f = testing::random_spiky_function(d, 4);
        const auto fam = sparse_decompose(f, 8.0);
        const auto rep = carleson_sum_check(fam, GridFunction::constant(d, 1.0), one, 3.0);
        double total = 0.0;
        for (const auto& lvl : fam.levels)
            for (const auto& q : lvl.cubes) total += q.cube.volume();
        CHECK(rep.lhs <= total * (1 + 1e-12));
        CHECK(total <= 2.0 * fam.frame.top().volume() * (1 + 1e-12));
    }

    SUBCASE("power weight") {
        const auto w = power_weight(d, 0.5);
        const auto f = testing::random_spiky_function(d, 9);
        const auto fam = sparse_decompose(f, 8.0);
        const auto g = testing::random_function(d, 77, 0.0, 1.0);
        const auto rep = carleson_sum_check(fam, g, w, 2.0);
        CHECK(std::isfinite(rep.ratio()));
        CHECK(rep.ratio() > 0.0);
    }
}

TEST_CASE("base just above 2^n still runs") {
    const Domain d = Domain::make(1, 0, 6);
    const auto f = testing::random_spiky_function(d, 2);
    const auto fam = sparse_decompose(f, 3.0);
    const auto inv = verify_sparse_family(fam, f);
    CHECK(inv.disjoint);
    CHECK(inv.level_sets);
    CHECK(std::isfinite(sparse_domination_check(fam)));
}
