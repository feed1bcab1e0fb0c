#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "qap/error.hpp"
#include "qap/extremality.hpp"
#include "qap/families.hpp"

using namespace qap;

namespace {

Eigen::MatrixXd projector(const std::vector<Vec9>& basis) {
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(9, 9);
    for (const auto& v : basis) {
        Eigen::Map<const Eigen::VectorXd> x(v.data(), 9);
        p += x * x.transpose();
    }
    return p;
}

}  // namespace

TEST_CASE("null_space picks eigenvalues inside the window") {
    Mat3 m{{{0, 0, 0}, {0, 0, 0}, {0, 0, 1}}};
    CHECK(null_space(m, 1e-12).size() == 2);
    Mat3 z = build_L1(zeta(8));
    auto n = null_space(z, 1e-12);
    REQUIRE(n.size() == 1);
    CHECK(std::abs(n[0][0]) == doctest::Approx(1.0));
}

TEST_CASE("zeta1 t-system layout") {
    TSystem sys = build_t_system(zeta(1));
    CHECK(sys.sum_rows() == 1);
    CHECK(sys.equality_rows() == 7);
    CHECK(sys.l_rows() == 6);
    auto r = rank_analysis(sys);
    CHECK(r.rank == 9);
    CHECK(r.verdict == Extremality::Extreme);
    CHECK(r.null_basis.empty());
}

TEST_CASE("all anchors are extreme") {
    for (int k = 1; k <= 8; ++k) {
        CAPTURE(k);
        CHECK(extremality_test(zeta(k)).verdict == Extremality::Extreme);
    }
}

TEST_CASE("t-system needs a boundary point") {
    CHECK_THROWS_AS(build_t_system(uniform_spectrum()), Error);
    try {
        build_t_system(uniform_spectrum());
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotBoundary);
    }
}

TEST_CASE("nu{1,5,3} has a one-dimensional null direction") {
    const Vec9 expected{15, -6, -6, -6, -6, -6, 5, 5, 5};
    for (double c : {0.05, 0.07, 0.09}) {
        Spectrum s = eval_family(find_family("nu{1,5,3}"), c).spectrum;
        auto r = extremality_test(s);
        CHECK(r.verdict == Extremality::NotExtreme);
        REQUIRE(r.null_basis.size() == 1);
        CHECK(angle_between(r.null_basis[0], expected) < 1e-9);
        CHECK(r.null_basis[0][0] > 0);
        CHECK(interior_line_test(s, r.null_basis[0], 1e-4));
    }
}

TEST_CASE("stacked null basis does not depend on its rotation") {
    // an artificial two-dimensional null space, fed in two rotated bases
    Spectrum s = zeta(3);
    Vec3 w1{1, 0, 0}, w2{0, 0.6, 0.8};
    TSystem a = admissible_rows(s), b = admissible_rows(s);
    append_l_rows(a, Which::L1, w1, "w1");
    append_l_rows(a, Which::L1, w2, "w2");
    double th = 0.7;
    Vec3 r1, r2;
    for (int i = 0; i < 3; ++i) {
        r1[i] = std::cos(th) * w1[i] + std::sin(th) * w2[i];
        r2[i] = -std::sin(th) * w1[i] + std::cos(th) * w2[i];
    }
    append_l_rows(b, Which::L1, r1, "r1");
    append_l_rows(b, Which::L1, r2, "r2");
    auto ra = rank_analysis(a), rb = rank_analysis(b);
    CHECK(ra.rank == rb.rank);
    CHECK((projector(ra.null_basis) - projector(rb.null_basis)).norm() < 1e-10);
}

TEST_CASE("admissible directions obey the trace and equality rows") {
    Spectrum s = eval_family(find_family("nu{2,3,4}"), 0.07).spectrum;
    auto dirs = admissible_directions(s);
    CHECK(dirs.size() == 2);
    for (const auto& d : dirs) {
        double sum = 0;
        for (double x : d) sum += x;
        CHECK(std::abs(sum) < 1e-12);
        CHECK(std::abs(d[0] - d[1]) < 1e-12);
        CHECK(std::abs(d[6] - d[8]) < 1e-12);
    }
}

TEST_CASE("line test agrees with the extremality verdict on family points") {
    std::mt19937_64 rng(3);
    const auto& fams = list_families();
    std::uniform_int_distribution<std::size_t> pick(0, fams.size() - 1);
    std::uniform_real_distribution<double> u(0.1, 0.9);
    int flagged = 0;
    for (int i = 0; i < 20; ++i) {
        // every fourth draw lands on the flagged row so both verdicts are exercised
        const FamilySpec& f = i % 4 == 0 ? find_family("nu{1,5,3}") : fams[pick(rng)];
        if (f.form == FormKind::Point) continue;
        double c = f.lo.value + u(rng) * (f.hi.value - f.lo.value);
        Spectrum s = eval_family(f, c).spectrum;
        auto r = extremality_test(s);
        CAPTURE(f.id);
        CAPTURE(c);
        if (r.verdict == Extremality::NotExtreme) {
            ++flagged;
            CHECK(interior_line_test(s, r.null_basis[0], 1e-4));
        } else {
            for (const auto& d : admissible_directions(s)) CHECK_FALSE(interior_line_test(s, d, 1e-4));
        }
    }
    CHECK(flagged >= 5);
}

TEST_CASE("random family boundary points are extreme except on nu{1,5,3}") {
    std::mt19937_64 rng(17);
    const auto& fams = list_families();
    std::uniform_int_distribution<std::size_t> pick(0, fams.size() - 1);
    std::uniform_real_distribution<double> u(0.01, 0.99);
    for (int i = 0; i < 50; ++i) {
        const FamilySpec& f = fams[pick(rng)];
        double c = f.form == FormKind::Point ? f.lo.value : f.lo.value + u(rng) * (f.hi.value - f.lo.value);
        auto r = extremality_test(eval_family(f, c).spectrum);
        CAPTURE(f.id);
        CHECK((r.verdict == Extremality::Extreme) == f.extreme);
    }
}

TEST_CASE("line test with a spectrum probe") {
    // mixing toward the maximally mixed state stays AP on both sides for interior points
    Spectrum s = eval_family(find_family("nu{1,2,6}"), 0.087).spectrum;
    Vec9 m;
    Spectrum u = uniform_spectrum();
    for (int i = 0; i < 9; ++i) m[i] = 0.5 * (s[i] + u[i]);
    Spectrum mid = make_spectrum(m, SpectrumOptions{.renormalize = true});
    CHECK(interior_line_test(mid, u, 1e-3));
    CHECK_FALSE(interior_line_test(s, u, 1e-3));
}

TEST_CASE("angle_between is sign-insensitive and accurate for tiny angles") {
    Vec9 x{1, 0, 0, 0, 0, 0, 0, 0, 0}, y{-1, 1e-9, 0, 0, 0, 0, 0, 0, 0};
    CHECK(angle_between(x, y) == doctest::Approx(1e-9).epsilon(1e-6));
    CHECK(angle_between(x, x) == 0.0);
}
