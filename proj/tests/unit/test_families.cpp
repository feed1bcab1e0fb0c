#include <doctest.h>

#include <cmath>
#include <set>

#include "qap/error.hpp"
#include "qap/families.hpp"
#include "qap/polynomial.hpp"

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

double sup(const Spectrum& a, const Spectrum& b) {
    double d = 0;
    for (int i = 0; i < 9; ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

}  // namespace

TEST_CASE("table shape") {
    const auto& t = list_families();
    CHECK(t.size() == 32);
    int extreme = 0, points = 0, flagged = 0;
    std::set<std::string> ids;
    std::set<std::array<int, 3>> triples;
    for (const auto& f : t) {
        ids.insert(f.id);
        triples.insert({f.mu_a, f.mu_b, f.mu_c});
        CHECK(f.mu_a + f.mu_b + f.mu_c == 9);
        CHECK(f.lo.value <= f.hi.value);
        if (!f.extreme) ++flagged;
        else if (f.form == FormKind::Point) ++points;
        else ++extreme;
    }
    CHECK(ids.size() == 32);
    CHECK(extreme == 29);
    CHECK(points == 2);
    CHECK(flagged == 1);
    CHECK(triples.size() == 28);  // every ordered multiplicity triple appears
}

TEST_CASE("selectors") {
    CHECK(select_families("all").size() == 32);
    CHECK(select_families("nu1").size() == 6);
    CHECK(select_families("nu2").size() == 8);
    CHECK(select_families("nu6").size() == 4);
    CHECK(select_families("nu{2,4,3}").size() == 3);
    CHECK(select_families("nu{1,5,3}").size() == 1);
    CHECK(select_families("nu{6,2,1}^(2)").size() == 1);
    CHECK(code_of([] { select_families("nu{9,0,0}"); }) == ErrorCode::UnknownFamily);
}

TEST_CASE("constants") {
    double x = zeta5_x();
    CHECK(std::abs(poly_eval({1, -1, -5, 1}, x)) < 1e-13);
    CHECK(x > 2.70);
    CHECK(x < 2.71);
    double y = y_const();
    CHECK(std::abs(poly_eval({481, -37, -17, 1}, y)) < 1e-14);
    CHECK(y == doctest::Approx(0.056992).epsilon(1e-5));
    CHECK(std::abs(y - 1.0 / (5 * x + 4)) < 1e-14);
}

TEST_CASE("anchors are normalized two-level spectra") {
    for (int k = 1; k <= 8; ++k) {
        Spectrum z = zeta(k);
        double tr = 0;
        for (double v : z.values()) tr += v;
        CHECK(std::abs(tr - 1.0) <= 1e-14);
        CHECK(pattern(z).distinct() == 2);
        CHECK(pattern(z).groups[0].multiplicity == k);
    }
    CHECK(code_of([] { zeta(9); }) == ErrorCode::UnknownFamily);
}

TEST_CASE("zeta4 has four copies of the upper level") {
    Spectrum z = zeta(4);
    double r = z[0] / z[8];
    CHECK(r == doctest::Approx((5 + std::sqrt(17.0)) / 4).epsilon(1e-14));
    auto v = classify(z);
    CHECK(std::abs(v.l1) < 1e-15);
    CHECK(std::abs(v.l2) < 1e-15);
}

TEST_CASE("families sit on the boundary with the expected active determinant") {
    for (const auto& f : list_families()) {
        for (double c : sample_c(f, 7, 0.02)) {
            CAPTURE(f.id);
            CAPTURE(c);
            FamilyPoint p = eval_family(f, c);
            auto v = classify(p.spectrum);
            CHECK(v.membership == Membership::Boundary);
            // splice points at closed ends have both determinants vanishing
            bool splice = (c == f.lo.value && f.lo.closed) || (c == f.hi.value && f.hi.closed);
            CHECK(v.active == (splice ? Active::Both : f.active));
            double tr = 0;
            for (double x : p.spectrum.values()) tr += x;
            CHECK(std::abs(tr - 1.0) <= 1e-14);
        }
    }
}

TEST_CASE("splice points join their branches") {
    double s243 = endpoint_value("(85-14sqrt10)/585");
    Spectrum p = special_point("nu{2,4,3}^(3)");
    CHECK(sup(eval_family(find_family("nu{2,4,3}^(1)"), s243).spectrum, p) < 1e-12);
    CHECK(sup(eval_family(find_family("nu{2,4,3}^(2)"), s243).spectrum, p) < 1e-12);
    CHECK(p.lambda(1) == doctest::Approx(0.18942117658263571).epsilon(1e-14));
    CHECK(p.lambda(3) == doctest::Approx(0.10307388253221716).epsilon(1e-14));

    Spectrum q = special_point("nu{6,2,1}^(3)");
    CHECK(sup(eval_family(find_family("nu{6,2,1}^(1)"), 1.0 / 57).spectrum, q) < 1e-12);
    CHECK(sup(eval_family(find_family("nu{6,2,1}^(2)"), 1.0 / 57).spectrum, q) < 1e-12);
    for (const auto& s : {p, q}) {
        auto v = classify(s);
        CHECK(v.active == Active::Both);
        CHECK(std::abs(v.l1) < 1e-15);
        CHECK(std::abs(v.l2) < 1e-15);
    }
}

TEST_CASE("domain checks") {
    const FamilySpec& f = find_family("nu{1,2,6}");
    CHECK(code_of([&] { eval_family(f, 1.0 / 12); }) == ErrorCode::OutOfRange);
    CHECK(code_of([&] { eval_family(f, 1.0 / 11); }) == ErrorCode::OutOfRange);
    CHECK(code_of([&] { eval_family(f, 0.2); }) == ErrorCode::OutOfRange);
    CHECK(code_of([&] { eval_family(f, NAN); }) == ErrorCode::OutOfRange);
    CHECK_NOTHROW(eval_family(find_family("nu{6,2,1}^(1)"), 1.0 / 57));
    CHECK(code_of([&] { verify_limit(f, End::Lo, 0.0); }) == ErrorCode::OutOfRange);
    CHECK(code_of([] { find_family("nu{1,1,1}"); }) == ErrorCode::UnknownFamily);
}

TEST_CASE("root selection failure is reported") {
    FamilySpec f = find_family("nu{1,4,4}");
    f.root_index = 4;
    CHECK(code_of([&] { eval_family(f, 0.07); }) == ErrorCode::RootSelectionFailure);
    f.root_index = 3;  // a real root, but the ordering breaks
    CHECK(code_of([&] { eval_family(f, 0.07); }) == ErrorCode::RootSelectionFailure);
}

TEST_CASE("sampling respects open and closed ends") {
    const FamilySpec& f = find_family("nu{2,4,3}^(1)");
    auto cs = sample_c(f, 5);
    REQUIRE(cs.size() == 5);
    CHECK(cs.front() > f.lo.value);
    CHECK(cs.back() == f.hi.value);
    CHECK(sample_c(find_family("nu{2,4,3}^(3)"), 50).size() == 1);
}

TEST_CASE("limits approach the anchor states") {
    for (const auto& f : list_families()) {
        if (f.form == FormKind::Point) continue;
        CAPTURE(f.id);
        CHECK(verify_limit(f, End::Lo, 1e-8) < 1e-3);
        CHECK(verify_limit(f, End::Hi, 1e-8) < 1e-3);
        // the distance shrinks as the endpoint is approached
        CHECK(verify_limit(f, End::Lo, 1e-10) <= verify_limit(f, End::Lo, 1e-6));
    }
}

TEST_CASE("nu{1,5,3} splits into zeta1 and zeta6") {
    for (double c : {0.05, 0.06, 0.07, 0.08, 0.09}) {
        auto d = nu153_decompose(c);
        CHECK(d.residual <= 1e-12);
        CHECK(d.x > 0);
        CHECK(d.x < 1);
    }
    CHECK(nu153_decompose(1.0 / 21).x == doctest::Approx(0.0));
    CHECK(nu153_decompose(1.0 / 11).x == doctest::Approx(1.0));
    CHECK(code_of([] { nu153_decompose(0.1); }) == ErrorCode::OutOfRange);
}

TEST_CASE("three-level boundary solver") {
    int found = 0;
    for (double c : {0.01, 0.03, 0.05, 0.07}) {
        for (Which w : {Which::L1, Which::L2}) {
            for (const auto& t : three_level_boundary(2, 3, 4, c, w)) {
                ++found;
                Spectrum s = from_three_level(t);
                Mat3 m = w == Which::L1 ? build_L1(s) : build_L2(s);
                CHECK(std::abs(det3(m)) < 1e-14);
            }
        }
    }
    CHECK(found > 0);
}

TEST_CASE("named constants") {
    CHECK(resolve_named("zeta3").value() == zeta(3));
    CHECK(resolve_named("uniform").value() == uniform_spectrum());
    CHECK(resolve_named("nu{2,4,3}^(3)").value() == special_point("nu{2,4,3}^(3)"));
    CHECK(resolve_named("nu{1,2,6}@0.087").value() == eval_family(find_family("nu{1,2,6}"), 0.087).spectrum);
    CHECK(resolve_named("nu{2,4,3}^(1)@0.06").has_value());
    CHECK_FALSE(resolve_named("0.1,0.1").has_value());
    CHECK(code_of([] { resolve_named("nu{1,2,6}@abc"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { resolve_named("nu{1,2,6}@0.5"); }) == ErrorCode::OutOfRange);
    CHECK(code_of([] { resolve_named("nu{1,2,6}"); }) == ErrorCode::OutOfRange);
}
