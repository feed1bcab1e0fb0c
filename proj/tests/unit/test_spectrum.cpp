#include <doctest.h>

#include <random>

#include "qap/error.hpp"
#include "qap/spectrum.hpp"

using namespace qap;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::InternalInconsistency;
}

}  // namespace

TEST_CASE("make_spectrum sorts into nonincreasing order") {
    Spectrum s = make_spectrum({0.05, 0.2, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.15});
    for (int k = 1; k < 9; ++k) CHECK(s.lambda(k) >= s.lambda(k + 1));
    CHECK(s.lambda(1) == 0.2);
    CHECK(s.lambda(9) == 0.05);
}

TEST_CASE("make_spectrum rejects bad input") {
    CHECK(code_of([] { make_spectrum({-0.1, 0.2, 0.1, 0.1, 0.1, 0.1, 0.1, 0.2, 0.2}); }) ==
          ErrorCode::NegativeEigenvalue);
    CHECK(code_of([] { make_spectrum({0.2, 0.2, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1}); }) == ErrorCode::NotNormalized);
    CHECK(code_of([] { make_spectrum({0.5, 0.5}); }) == ErrorCode::NotNormalized);
}

TEST_CASE("renormalization is opt-in and bounded") {
    std::vector<double> v(9, 1.0 / 9.0);
    v[0] += 5e-10;
    CHECK(code_of([&] { make_spectrum(v); }) == ErrorCode::NotNormalized);
    Spectrum s = make_spectrum(v, SpectrumOptions{.renormalize = true});
    double sum = 0;
    for (double x : s.values()) sum += x;
    CHECK(std::abs(sum - 1.0) <= 1e-14);

    v[0] += 1e-6;
    CHECK(code_of([&] { make_spectrum(v, SpectrumOptions{.renormalize = true}); }) == ErrorCode::NotNormalized);
}

TEST_CASE("tiny negative values are clamped to zero") {
    Spectrum s = make_spectrum({0.125, 0.125, 0.125, 0.125, 0.125, 0.125, 0.125, 0.125, -1e-15});
    CHECK(s.lambda(9) == 0.0);
    CHECK(s.rank_deficient());
}

TEST_CASE("make_spectrum is idempotent and keeps the trace") {
    std::mt19937_64 rng(7);
    std::gamma_distribution<double> g(1.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> v(9);
        double sum = 0;
        for (double& x : v) sum += (x = g(rng));
        for (double& x : v) x /= sum;
        Spectrum s = make_spectrum(v, SpectrumOptions{.renormalize = true});
        double tr = 0;
        for (double x : s.values()) tr += x;
        CHECK(std::abs(tr - 1.0) <= 1e-14);
        Spectrum t = make_spectrum(s.values());
        CHECK(t == s);
    }
}

TEST_CASE("pattern groups equal values") {
    Spectrum u = uniform_spectrum();
    CHECK(pattern(u).distinct() == 1);
    CHECK(pattern(u).groups[0].multiplicity == 9);

    Spectrum s = from_three_level({2, 4, 3, 0.2, 0.1, (1.0 - 0.4 - 0.4) / 3.0});
    auto p = pattern(s);
    REQUIRE(p.distinct() == 3);
    CHECK(p.groups[0].multiplicity == 2);
    CHECK(p.groups[1].multiplicity == 4);
    CHECK(p.groups[2].multiplicity == 3);
    CHECK(p.groups[2].first == 6);
    CHECK(p.same_group(2, 5));
    CHECK_FALSE(p.same_group(1, 2));
}

TEST_CASE("pattern tolerance") {
    std::vector<double> v(9, 1.0 / 9.0);
    v[0] += 1e-12;
    v[8] -= 1e-12;
    CHECK(pattern(make_spectrum(v)).distinct() == 1);
    CHECK(pattern(make_spectrum(v), 1e-13).distinct() == 3);
}

TEST_CASE("from_three_level checks the ordering") {
    CHECK(code_of([] { from_three_level({1, 4, 4, 0.1, 0.1, 0.1}); }) == ErrorCode::OrderViolation);
    CHECK(code_of([] { from_three_level({1, 4, 3, 0.3, 0.1, 0.05}); }) == ErrorCode::OrderViolation);
    Spectrum s = from_three_level({1, 7, 1, 0.3, 0.1, 0.0});
    CHECK(s.rank_deficient());
}
