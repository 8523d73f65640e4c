#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "vexlab/errors.hpp"
#include "vexlab/exponent.hpp"

using namespace vexlab;

namespace {

VariableExponent jump(const Domain& d) { return two_piece_exponent(d, 2.0, 3.0, 2.0); }

}  // namespace

TEST_CASE("construction checks") {
    const Domain d = Domain::make(1, 0, 2);
    CHECK_THROWS_AS(VariableExponent::constant(d, 1.0), UnsupportedExponent);
    CHECK_THROWS_AS(VariableExponent::make(GridFunction::constant(d, 2.0), 1.0), UnsupportedExponent);
    CHECK_THROWS_AS(VariableExponent::make(GridFunction::constant(d, 2.0), INFINITY), UnsupportedExponent);
    const auto p = jump(d);
    CHECK(p.p_minus() == 2.0);
    CHECK(p.p_plus() == 3.0);
    CHECK_NOTHROW(RelaxedExponent::make(GridFunction::constant(d, 1.0), 1.0));
    CHECK_THROWS_AS(RelaxedExponent::make(GridFunction::constant(d, 0.5), 1.0), UnsupportedExponent);
}

TEST_CASE("conjugate examples") {
    const Domain d = Domain::make(1, 0, 2);
    const auto two = conjugate(VariableExponent::constant(d, 2.0));
    CHECK(two.p_minus() == 2.0);
    CHECK(two.p_plus() == 2.0);
    const auto four = conjugate(VariableExponent::constant(d, 4.0));
    CHECK(four.p_plus() == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(four.p_infinity() == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    const auto j = conjugate(jump(d));
    CHECK(j.p_minus() == 1.5);
    CHECK(j.p_plus() == 2.0);
}

TEST_CASE("conjugate is an involution and 1/p + 1/p' = 1") {
    const Domain d = Domain::make(2, 1, 3);
    const auto p = VariableExponent::make(testing::random_function(d, 8, 1.1, 7.0), 2.0);
    const auto pc = conjugate(p);
    const auto back = conjugate(pc);
    for (std::size_t i = 0; i < p.values().size(); ++i) {
        CHECK(std::abs(back[i] - p[i]) <= 1e-12 * p[i]);
        CHECK(std::abs(1.0 / p[i] + 1.0 / pc[i] - 1.0) <= 1e-12);
    }
    CHECK(pc.p_plus() == doctest::Approx(conjugate_value(p.p_minus())).epsilon(1e-14));
    CHECK(pc.p_minus() == doctest::Approx(conjugate_value(p.p_plus())).epsilon(1e-14));
}

TEST_CASE("local extrema") {
    const Domain d = Domain::make(1, 0, 2);
    const auto p = jump(d);
    CHECK(local_extrema(VariableExponent::constant(d, 2.5), Cube{{1, 0}, 3}) == std::pair{2.5, 2.5});
    CHECK(local_extrema(p, Cube{{0, 0}, 8}) == std::pair{2.0, 3.0});
    CHECK(local_extrema(p, Cube{{0, 0}, 4}) == std::pair{2.0, 2.0});
}

TEST_CASE("local extrema are monotone under inclusion") {
    const Domain d = Domain::make(2, 0, 2);
    const auto p = VariableExponent::make(testing::random_function(d, 4, 1.5, 3.0), 2.0);
    for (const Cube& q : enumerate_cubes(d, 1.0)) {
        const Cube r{{std::max<std::int64_t>(0, q.corner[0] - 1), std::max<std::int64_t>(0, q.corner[1] - 1)},
                     q.side_cells + 1};
        if (!r.inside(d) || !r.contains(d, q)) continue;
        const auto [qm, qp] = local_extrema(p, q);
        const auto [rm, rp] = local_extrema(p, r);
        CHECK(rm <= qm);
        CHECK(qm <= qp);
        CHECK(qp <= rp);
    }
}

TEST_CASE("log-Hoelder certificates") {
    const Domain d = Domain::make(1, 2, 4);
    const auto c = check_log_holder(VariableExponent::constant(d, 2.0));
    CHECK(c.c_local == 0.0);
    CHECK(c.c_infinity == 0.0);
    CHECK(c.pair_count > 0);

    const auto decay = check_log_holder(decay_exponent(d, 2.0, 1.0));
    CHECK(decay.c_infinity <= 1.0 + 1e-12);
    CHECK(decay.c_infinity >= 1.0 - 1e-12);
}

TEST_CASE("a jump makes the local certificate diverge under refinement") {
    double previous = 0.0;
    for (int level : {4, 6, 8, 10}) {
        const Domain d = Domain::make(1, 0, level);
        const double h = d.cell_side();
        const double c = check_log_holder(jump(d)).c_local;
        // The two cells meeting at the jump are one cell apart.
        CHECK(c >= -std::log(h));
        CHECK(c >= 0.5 * -std::log(h));
        CHECK(c > previous);
        previous = c;
    }
}

TEST_CASE("sampled pairs are deterministic on large grids") {
    const Domain d = Domain::make(2, 0, 6);
    REQUIRE(d.cell_count() > 4096);
    const auto p = lh_smooth_exponent(d);
    const auto a = check_log_holder(p, 7);
    const auto b = check_log_holder(p, 7);
    CHECK(a.c_local == b.c_local);
    CHECK(a.pair_count == b.pair_count);
    CHECK(std::isfinite(a.c_local));
}

TEST_CASE("profile shapes") {
    const Domain d = Domain::make(1, 1, 3);
    const auto smooth = lh_smooth_exponent(d, 2.0, 0.5);
    CHECK(smooth.p_minus() > 1.5);
    CHECK(smooth.p_plus() < 2.5);
    const auto weak = weak_profile_exponent(d);
    CHECK(weak.p_minus() == 1.0);
    CHECK(weak.p_plus() == 2.0);
}
