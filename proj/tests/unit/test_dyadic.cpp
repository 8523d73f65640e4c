#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "vexlab/dyadic.hpp"
#include "vexlab/errors.hpp"
#include "vexlab/maximal.hpp"

using namespace vexlab;

namespace {

std::int64_t units(double x, int level) { return std::llround(x * 3 * std::ldexp(1.0, level)); }

}  // namespace

TEST_CASE("interval examples") {
    const auto c1 = dyadic_cube({2, 0}, 1, 0, {0, 0}, 4);
    CHECK(c1.lower(0) == 0.0);
    CHECK(c1.side_length() == 1.0);
    const auto c2 = dyadic_cube({0, 0}, 1, 1, {0, 0}, 4);
    CHECK(c2.lower(0) == doctest::Approx(-2.0 / 3.0).epsilon(1e-15));
    CHECK(c2.side_length() == 2.0);
    const auto c3 = dyadic_cube({1, 0}, 1, 0, {0, 0}, 4);
    CHECK(c3.lower(0) == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
    CHECK(c3.lower_units(0, 4) == -16);
    CHECK_THROWS_AS(dyadic_cube({1, 0}, 1, -5, {0, 0}, 4), ResolutionError);
}

TEST_CASE("unit arithmetic matches the formulas") {
    const int level = 6;
    for (int a = 0; a < 3; ++a)
        for (int k = -level; k <= 5; ++k)
            for (std::int64_t m = -40; m <= 40; ++m) {
                const auto [lo, hi] = oracle::formula_interval(a, k, m, level);
                const auto q = dyadic_cube({a, 0}, 1, k, {m, 0}, level);
                CHECK(q.lower_units(0, level) == lo);
                CHECK(q.lower_units(0, level) + q.side_units(level) == hi);
                CHECK(dyadic_locate_units(a, k, lo, level) == m);
                CHECK(dyadic_locate_units(a, k, hi - 1, level) == m);
            }
}

TEST_CASE("fixed scale intervals tile the line") {
    const int level = 5;
    for (int a = 0; a < 3; ++a)
        for (int k = -level; k <= 4; ++k)
            for (std::int64_t m = -30; m < 30; ++m)
                CHECK(oracle::formula_interval(a, k, m, level).second == oracle::formula_interval(a, k, m + 1, level).first);
}

TEST_CASE("children examples") {
    const auto kids = children(dyadic_cube({0, 0}, 1, 1, {0, 0}, 4), 4);
    REQUIRE(kids.size() == 2);
    CHECK(kids[0].lower(0) == doctest::Approx(-2.0 / 3.0).epsilon(1e-15));
    CHECK(kids[1].lower(0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(kids[1].lower(0) + kids[1].side_length() == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS(children(dyadic_cube({0, 0}, 1, -4, {0, 0}, 4), 4), ResolutionError);
}

TEST_CASE("nesting for every shift and scale") {
    const int level = 4, s = 1;
    for (int dim : {1, 2})
        for (const Shift& a : all_shifts(dim))
            for (int k = -level + 1; k <= s + 1; ++k)
                for (std::int64_t m0 = -6; m0 <= 6; ++m0)
                    for (std::int64_t m1 = (dim == 2 ? -3 : 0); m1 <= (dim == 2 ? 3 : 0); ++m1) {
                        const auto q = dyadic_cube(a, dim, k, {m0, m1}, level);
                        const auto kids = children(q, level);
                        CHECK(kids.size() == (dim == 1 ? 2u : 4u));
                        std::int64_t covered = 0;
                        for (const auto& c : kids) {
                            CHECK(parent(c) == q);
                            std::int64_t vol = 1;
                            for (int i = 0; i < dim; ++i) {
                                CHECK(c.lower_units(i, level) >= q.lower_units(i, level));
                                CHECK(c.lower_units(i, level) + c.side_units(level) <=
                                      q.lower_units(i, level) + q.side_units(level));
                                vol *= c.side_units(level);
                            }
                            covered += vol;
                        }
                        std::int64_t qvol = 1;
                        for (int i = 0; i < dim; ++i) qvol *= q.side_units(level);
                        CHECK(covered == qvol);
                        // Distinct children of a cube are disjoint: their lower corners differ by a child side.
                        std::set<std::pair<std::int64_t, std::int64_t>> corners;
                        for (const auto& c : kids)
                            corners.insert({c.lower_units(0, level), dim == 2 ? c.lower_units(1, level) : 0});
                        CHECK(corners.size() == kids.size());
                    }
}

TEST_CASE("fixed scale cubes tile the box") {
    const Domain d = Domain::make(2, 1, 2);
    const Domain t = d.thirds();
    for (const Shift& a : all_shifts(2))
        for (int k = -2; k <= 2; ++k) {
            std::map<std::pair<std::int64_t, std::int64_t>, int> counts;
            for (std::size_t c = 0; c < t.cell_count(); ++c) {
                const Index2 idx = t.unravel(c);
                const auto q = locate(a, 2, k, {cell_units(t, idx[0]), cell_units(t, idx[1])}, d.level());
                ++counts[{q.m[0], q.m[1]}];
            }
            std::size_t total = 0;
            for (const auto& [m, n] : counts) total += static_cast<std::size_t>(n);
            CHECK(total == t.cell_count());
            for (const auto& [m, n] : counts) {
                const auto q = dyadic_cube(a, 2, k, {m.first, m.second}, d.level());
                const Cube g = to_grid_cube(q, t);
                std::int64_t in = 1;
                for (int i = 0; i < 2; ++i)
                    in *= std::min<std::int64_t>(g.corner[i] + g.side_cells, t.cells_per_axis()) -
                          std::max<std::int64_t>(g.corner[i], 0);
                CHECK(n == in);
            }
        }
}

TEST_CASE("covering cube examples") {
    const Domain d = Domain::make(1, 0, 8);
    const Cube q = Cube::from_coordinates(d, {0.0, 0.0}, 0.125);
    const auto r = covering_cube(d, q);
    REQUIRE(r.has_value());
    // [0, 1/8) is itself the cube (a = 2, k = -3, m = -5), so R = Q.
    CHECK(r->shift[0] == 2);
    CHECK(r->cube.k == -3);
    CHECK(r->cube.m[0] == -5);
    CHECK(r->cube.lower(0) == 0.0);
    // [0, 1/4) is also a valid cover with side ratio 2; in D_{-2,2} it has index m = -2.
    const auto alt = dyadic_cube({2, 0}, 1, -2, {-2, 0}, 8);
    CHECK(alt.lower(0) == 0.0);
    CHECK(alt.side_length() == 0.25);

    const Cube small = Cube::from_coordinates(d, {0.3046875, 0.0}, 1.0 / 64);
    const auto s = covering_cube(d, small);
    REQUIRE(s.has_value());
    CHECK((s->cube.side_length() == 1.0 / 32 || s->cube.side_length() == 1.0 / 64 || s->cube.side_length() == 1.0 / 16));
    CHECK(s->cube.lower(0) <= 0.3046875);
    CHECK(s->cube.lower(0) + s->cube.side_length() >= 0.3046875 + 1.0 / 64);

    CHECK_THROWS_AS(covering_cube(d, Cube::from_coordinates(d, {0.0, 0.0}, 0.25)), ContractViolation);
}

TEST_CASE("covering cube on an exhaustive sweep") {
    const Domain d = Domain::make(1, 0, 8);
    std::size_t found = 0, total = 0;
    for_each_cube(d, 1.0 / 6.0, StridePolicy::exhaustive(), [&](const Cube& q) {
        ++total;
        const auto r = covering_cube(d, q);
        if (!r) return;
        const std::int64_t lo = units(d.edge(q.corner[0]), d.level());
        const std::int64_t hi = units(d.edge(q.corner[0] + q.side_cells), d.level());
        const auto [rlo, rhi] = oracle::formula_interval(r->shift[0], r->cube.k, r->cube.m[0], d.level());
        if (rlo <= lo && hi <= rhi && (rhi - rlo) <= 6 * (hi - lo) && r->cube.volume() <= 1.0) ++found;
    });
    CHECK(total > 10000);
    CHECK(found == total);
}

TEST_CASE("tree aggregates") {
    const Domain d = Domain::make(1, 1, 3);
    const Domain t = d.thirds();
    const auto one = DyadicTree::build(GridFunction::constant(d, 1.0), {1, 1});
    const auto& fr = one.frame();
    // Nodes inside the box aggregate their measure.
    for (int depth = 0; depth <= fr.depth(); ++depth)
        for (std::size_t node = 0; node < fr.node_count(depth); ++node) {
            const auto q = fr.node_cube(depth, node);
            if (!dyadic_inside(q, d)) continue;
            CHECK(one.num(depth, node) * t.cell_volume() == doctest::Approx(q.volume()).epsilon(1e-14));
        }

    const auto f = testing::random_function(d, 21);
    const auto g = testing::random_function(d, 22);
    const auto tf = DyadicTree::build(f, {1, 1});
    const auto tg = DyadicTree::build(g, {1, 1});
    const auto tfg = DyadicTree::build(f + g, {1, 1});
    double direct = 0.0;
    for (double v : f.values()) direct += v;
    CHECK(tf.num(0, 0) * t.cell_volume() == doctest::Approx(direct * d.cell_volume()).epsilon(1e-13));
    for (int depth = 0; depth <= fr.depth(); ++depth)
        for (std::size_t node = 0; node < fr.node_count(depth); ++node) {
            CHECK(tfg.num(depth, node) == doctest::Approx(tf.num(depth, node) + tg.num(depth, node)).epsilon(1e-13));
            if (depth < fr.depth()) {
                const auto idx = fr.unravel(depth, node);
                const double kids = tf.num(depth + 1, fr.ravel(depth + 1, {2 * idx[0], 0})) +
                                    tf.num(depth + 1, fr.ravel(depth + 1, {2 * idx[0] + 1, 0}));
                CHECK(tf.num(depth, node) == kids);
            }
        }
}


TEST_CASE("tree maximal equals brute force") {
    for (int dim : {1, 2}) {
        const Domain d = dim == 1 ? Domain::make(1, 1, 8) : Domain::make(2, 0, 4);
        REQUIRE(d.cell_count() <= 1024);
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            const auto f = testing::random_dyadic_function(d, seed);
            for (const Shift& a : all_shifts(dim)) {
                const auto tree = maximal(f, MaximalSpec::global().on_grid(a));
                const auto brute = oracle::brute_dyadic_maximal(f, a, d.half_extent_log2() + 4);
                std::size_t mismatches = 0;
                for (std::size_t c = 0; c < brute.size(); ++c)
                    if (tree[c] != brute[c]) ++mismatches;
                CHECK(mismatches == 0);
                const auto local = maximal(f, MaximalSpec::local().on_grid(a));
                const auto brute_local = oracle::brute_dyadic_maximal(f, a, 0);
                mismatches = 0;
                for (std::size_t c = 0; c < brute.size(); ++c)
                    if (local[c] != brute_local[c]) ++mismatches;
                CHECK(mismatches == 0);
            }
        }
    }
}
