#include <doctest.h>

#include "unicrit/map.hpp"

using namespace unicrit;

TEST_CASE("map validation") {
    CHECK_THROWS_AS(UnicriticalMap(1, Complex{0.0, 0.0}), UsageError);
    CHECK_THROWS_AS(
        UnicriticalMap(2, Complex{std::numeric_limits<double>::infinity(), 0.0}),
        UsageError);
    const UnicriticalMap map(3, Complex{0.25, -0.5});
    CHECK(map.apply(Complex{1.0, 0.0}) == Complex{1.25, -0.5});
}

TEST_CASE("escape radius bound") {
    CHECK(UnicriticalMap(2, Complex{-2.0, 0.0}).escape_radius() == 3.0);
    CHECK(UnicriticalMap(2, Complex{0.0, 0.0}).escape_radius() == 2.0);
}

TEST_CASE("orbit of the critical point hits the -inf derivative sentinel") {
    const UnicriticalMap map(2, Complex{-2.0, 0.0});
    const OrbitSegment orbit = iterate(map, Complex{0.0, 0.0}, 3);
    REQUIRE(orbit.points.size() == 4);
    CHECK(orbit.points[0] == Complex{0.0, 0.0});
    CHECK(orbit.points[1] == Complex{-2.0, 0.0});
    CHECK(orbit.points[2] == Complex{2.0, 0.0});
    CHECK(orbit.points[3] == Complex{2.0, 0.0});
    CHECK(orbit.log_deriv[0] == 0.0);
    for (std::size_t k = 1; k < orbit.log_deriv.size(); ++k) {
        CHECK(std::isinf(orbit.log_deriv[k]));
        CHECK(orbit.log_deriv[k] < 0.0);
    }
    CHECK_FALSE(orbit.escaped_at.has_value());
}

TEST_CASE("derivative cocycle accumulates the direct product") {
    const UnicriticalMap map(2, Complex{-2.0, 0.0});
    const OrbitSegment orbit = iterate(map, Complex{-2.0, 0.0}, 2);
    // |Df^2(-2)| = |2 * (-2)| * |2 * 2| = 16
    CHECK(std::exp(orbit.log_deriv[2]) == doctest::Approx(16.0).epsilon(1e-14));
}

TEST_CASE("fixed point of z^2 keeps unit orbit and 2^n derivative") {
    const UnicriticalMap map(2, Complex{0.0, 0.0});
    const OrbitSegment orbit = iterate(map, Complex{1.0, 0.0}, 5);
    for (const Complex& p : orbit.points) CHECK(p == Complex{1.0, 0.0});
    CHECK(std::exp(orbit.log_deriv[5]) == doctest::Approx(32.0).epsilon(1e-14));
}

TEST_CASE("escape truncates the orbit and records the index") {
    const UnicriticalMap map(2, Complex{3.0, 0.0});
    const OrbitSegment orbit = iterate(map, Complex{0.0, 0.0}, 10);
    // 0 -> 3 -> 12: |3| <= 4 but |12| > 4
    REQUIRE(orbit.escaped_at.has_value());
    CHECK(*orbit.escaped_at == 2);
    CHECK(orbit.points.size() == 3);

    const OrbitSegment immediate = iterate(map, Complex{100.0, 0.0}, 5);
    REQUIRE(immediate.escaped_at.has_value());
    CHECK(*immediate.escaped_at == 0);
    CHECK(immediate.points.size() == 1);
}

TEST_CASE("orbit points satisfy the recurrence") {
    const UnicriticalMap map(3, Complex{0.1, 0.2});
    const OrbitSegment orbit = iterate(map, Complex{0.4, -0.3}, 20);
    for (std::size_t k = 0; k + 1 < orbit.points.size(); ++k) {
        const Complex expect = map.apply(orbit.points[k]);
        CHECK(std::abs(orbit.points[k + 1] - expect) == 0.0);
    }
    CHECK_THROWS_AS(iterate(map, Complex{0.0, 0.0}, -1), UsageError);
}
