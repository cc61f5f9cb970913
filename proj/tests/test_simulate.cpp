#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "antloop/simulate.hpp"
#include "helpers.hpp"

using namespace antloop;
using namespace antloop::testing;

TEST_CASE("guard values along the motivating program") {
    LoopProgram p = parse_program(motivating_source());
    SUBCASE("immediate violation at (-9, 3, -2)") {
        Trace t = run(p, vec({R(-9), R(3), R(-2)}), 500);
        REQUIRE(!t.guard_values.empty());
        CHECK(t.guard_values[0][0] == R(-13, 2));
        REQUIRE(t.first_violation.has_value());
        CHECK(t.first_violation->first == 0);
    }
    SUBCASE("the second iterate is genuinely non-terminating at the horizon") {
        Trace scan = run_scan(p, vec({R(-9), R(3), R(-2)}), 4);
        CHECK(scan.guard_values[1][0] == R(-5, 2));
        CHECK(scan.points[2] == vec({R(63), R(3), R(22)}));
        Trace t = run(p, vec({R(63), R(3), R(22)}), 500);
        CHECK(!t.first_violation.has_value());
        CHECK(t.points.size() == 501);
    }
    SUBCASE("positive tail begins at step 2") {
        HorizonStatus st = check_ant_at_horizon(p, vec({R(-9), R(3), R(-2)}), 500);
        CHECK(st.kind == HorizonStatus::PositiveTail);
        CHECK(st.index == 2);
    }
}

TEST_CASE("zero start point of a homogeneous program violates immediately") {
    LoopProgram p = parse_program(motivating_source());
    Trace t = run(p, QVector(3, Rational(0)), 10);
    REQUIRE(t.first_violation.has_value());
    CHECK(t.first_violation->first == 0);
    HorizonStatus st = check_ant_at_horizon(p, QVector(3, Rational(0)), 100);
    CHECK(st.kind == HorizonStatus::Terminated);
    CHECK(st.index == 0);
}

TEST_CASE("trace end point equals the closed-form power") {
    SUBCASE("homogeneous") {
        LoopProgram p = parse_program(motivating_source());
        QVector x0 = vec({R(63), R(3), R(22)});
        Trace t = run_scan(p, x0, 30);
        CHECK(t.points.back() == matrix_power(p.a, 30) * x0);
    }
    SUBCASE("affine telescoping") {
        LoopProgram p = parse_program("while (x + y > 1) { x := x + y; y := y + 1; }");
        QVector x0 = vec({R(1), R(1)});
        Trace t = run_scan(p, x0, 12);
        QVector expected = x0;
        for (int k = 0; k < 12; ++k) {
            expected = p.a * expected;
            for (int i = 0; i < p.dim(); ++i) expected[i] += p.c[i];
        }
        CHECK(t.points.back() == expected);
    }
}

TEST_CASE("homogenization reproduces guard signs step for step") {
    LoopProgram p = parse_program("while (x + y > 1) { x := x + y; y := y + 1; }");
    auto [h, note] = homogenize(p);
    REQUIRE(note.was_affine);
    QVector x0 = vec({R(-2), R(1)});
    Trace affine = run_scan(p, x0, 25);
    QVector lifted = x0;
    lifted.push_back(Rational(1));
    Trace hom = run_scan(h, lifted, 25);
    for (size_t k = 0; k < affine.guard_values.size(); ++k)
        for (int i = 0; i < p.conditions(); ++i)
            CHECK(sign(affine.guard_values[k][i]) == sign(hom.guard_values[k][i]));
}

TEST_CASE("run stops at the first violation, the scan does not") {
    LoopProgram p = parse_program(motivating_source());
    QVector u = vec({R(-9), R(3), R(-2)});
    Trace stopped = run(p, u, 500);
    CHECK(stopped.points.size() == 1);
    Trace full = run_scan(p, u, 500);
    CHECK(full.points.size() == 501);
    REQUIRE(full.first_violation.has_value());
    CHECK(full.first_violation->first == 0);
}
