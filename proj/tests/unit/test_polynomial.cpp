#include <doctest.h>

#include "qap/error.hpp"
#include "qap/polynomial.hpp"

using namespace qap;

TEST_CASE("real roots come back ascending") {
    // (x - 3)(x + 1)(x - 0.5)
    auto r = real_roots({1, -2.5, -2, 1.5});
    REQUIRE(r.size() == 3);
    CHECK(r[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(r[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(r[2] == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("complex pairs are dropped") {
    // (x^2 + 1)(x - 2)
    auto r = real_roots({1, -2, 1, -2});
    REQUIRE(r.size() == 1);
    CHECK(r[0] == doctest::Approx(2.0));
}

TEST_CASE("double roots are counted twice") {
    // (x - 1)^2 (x + 2)
    auto r = real_roots({1, 0, -3, 2});
    REQUIRE(r.size() == 3);
    CHECK(r[0] == doctest::Approx(-2.0));
    CHECK(r[1] == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(r[2] == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("leading zeros reduce the degree") {
    auto r = real_roots({0, 2, -4});
    REQUIRE(r.size() == 1);
    CHECK(r[0] == doctest::Approx(2.0));
}

TEST_CASE("bisection") {
    double y = bisect_root({481, -37, -17, 1}, 0.05, 0.06);
    CHECK(std::abs(poly_eval({481, -37, -17, 1}, y)) < 1e-14);
    CHECK_THROWS_AS(bisect_root({1, 0, 1}, -1, 1), Error);
}
