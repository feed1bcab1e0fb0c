#include "qap/families.hpp"

#include <algorithm>
#include <cmath>
#include <regex>
#include <sstream>

#include <Eigen/Dense>

#include "qap/error.hpp"
#include "qap/polynomial.hpp"

namespace qap {

namespace {

const double kS2 = std::sqrt(2.0);
const double kS10 = std::sqrt(10.0);
const double kS17 = std::sqrt(17.0);

Spectrum two_level(int mu_hi, double hi, double lo) {
    Vec9 v;
    for (int i = 0; i < 9; ++i) v[i] = i < mu_hi ? hi : lo;
    double sum = mu_hi * hi + (9 - mu_hi) * lo;
    for (double& x : v) x /= sum;
    return make_spectrum(v, SpectrumOptions{.renormalize = true});
}

double sq(double x) { return x * x; }

// sqrt that tolerates tiny negative arguments from rounding at the endpoints
double rt(double x) {
    if (x < 0.0 && x > -1e-14) return 0.0;
    if (x < 0.0) throw Error(ErrorCode::RootSelectionFailure, "negative radicand");
    return std::sqrt(x);
}

std::string fmt17(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

}  // namespace

double zeta5_x() {
    static const double x = [] {
        for (double r : real_roots({1.0, -1.0, -5.0, 1.0}))
            if (r > 2.0 && r < 3.0) return r;
        throw Error(ErrorCode::InternalInconsistency, "zeta5 root not found");
    }();
    return x;
}

double y_const() {
    static const double y = [] {
        auto r = real_roots({481.0, -37.0, -17.0, 1.0});
        if (r.size() != 3) throw Error(ErrorCode::InternalInconsistency, "y cubic lost a root");
        return r[1];
    }();
    return y;
}

Spectrum zeta(int k) {
    switch (k) {
        case 1: return two_level(1, 3.0, 1.0);
        case 2: return two_level(2, kS2 + 1.0, 1.0);
        case 3: return two_level(3, 2.0, 1.0);
        case 4: return two_level(4, (5.0 + kS17) / 4.0, 1.0);
        case 5: return two_level(5, zeta5_x(), 1.0);
        case 6: return two_level(6, 3.0, 1.0);
        case 7: return two_level(7, 3.0 + 2.0 * kS2, 1.0);
        case 8: return two_level(8, 1.0, 0.0);
    }
    throw Error(ErrorCode::UnknownFamily, "zeta index must be 1..8, got " + std::to_string(k));
}

const std::vector<NamedConstant>& endpoint_constants() {
    static const std::vector<NamedConstant> v = {
        {"0", "0", 0.0},
        {"1/57", "1/57", 1.0 / 57.0},
        {"(23-14sqrt2)/137", "(23 - 14 sqrt(2))/137", (23.0 - 14.0 * kS2) / 137.0},
        {"1/21", "1/21", 1.0 / 21.0},
        {"y", "root of 481y^3 - 37y^2 - 17y + 1", y_const()},
        {"(85-14sqrt10)/585", "(85 - 14 sqrt(10))/585", (85.0 - 14.0 * kS10) / 585.0},
        {"(10-sqrt17)/83", "(10 - sqrt(17))/83", (10.0 - kS17) / 83.0},
        {"1/12", "1/12", 1.0 / 12.0},
        {"(9-2sqrt2)/73", "(9 - 2 sqrt(2))/73", (9.0 - 2.0 * kS2) / 73.0},
        {"1/11", "1/11", 1.0 / 11.0},
    };
    return v;
}

double endpoint_value(const std::string& name) {
    for (const auto& c : endpoint_constants())
        if (c.name == name) return c.value;
    throw Error(ErrorCode::UnknownFamily, "unknown endpoint constant " + name);
}

namespace {

Spectrum nu243_point() {
    double c = (85.0 - 14.0 * kS10) / 585.0;
    double q = 85.0 - 14.0 * kS10;
    double b = (36.0 - 19.0 / 117.0 * q) / (7.0 * q);
    double a = (1.0 - 4.0 * b - 3.0 * c) / 2.0;
    return from_three_level({2, 4, 3, a, b, c});
}

Spectrum nu621_point() { return from_three_level({6, 2, 1, 8.0 / 57.0, 4.0 / 57.0, 1.0 / 57.0}); }

const char* kZ[] = {"", "zeta1", "zeta2", "zeta3", "zeta4", "zeta5", "zeta6", "zeta7", "zeta8"};

Endpoint ep(const char* name, bool closed, const char* limit) {
    return Endpoint{name, endpoint_value(name), closed, limit};
}

using Cubic = std::array<double, 4>;

FamilySpec closed(const char* id, int ma, int mb, int mc, int var, const char* text, double (*b)(double), Endpoint lo,
                  Endpoint hi, Active act, bool extreme = true) {
    FamilySpec f;
    f.id = id;
    f.mu_a = ma;
    f.mu_b = mb;
    f.mu_c = mc;
    f.variant = var;
    f.form = FormKind::Closed;
    f.b_formula = text;
    f.b_closed = b;
    f.lo = std::move(lo);
    f.hi = std::move(hi);
    f.active = act;
    f.extreme = extreme;
    return f;
}

FamilySpec cubic(const char* id, int ma, int mb, int mc, int var, const char* text, Cubic (*poly)(double), int root,
                 Endpoint lo, Endpoint hi, Active act) {
    FamilySpec f = closed(id, ma, mb, mc, var, text, nullptr, std::move(lo), std::move(hi), act);
    f.form = FormKind::Cubic;
    f.cubic = poly;
    f.root_index = root;
    return f;
}

FamilySpec point(const char* id, int ma, int mb, int mc, const char* cname, const char* text) {
    Endpoint e = ep(cname, true, id);
    FamilySpec f = closed(id, ma, mb, mc, 3, text, nullptr, e, e, Active::Both);
    f.form = FormKind::Point;
    return f;
}

const char* Z2 = "(9-2sqrt2)/73";
const char* Z4 = "(10-sqrt17)/83";
const char* Z7 = "(23-14sqrt2)/137";
const char* S243 = "(85-14sqrt10)/585";
const char* P243 = "nu{2,4,3}^(3)";
const char* P621 = "nu{6,2,1}^(3)";

std::vector<FamilySpec> build_table() {
    const auto L1 = Active::L1Zero, L2 = Active::L2Zero, B = Active::Both;
    std::vector<FamilySpec> t;

    t.push_back(closed("nu{1,1,7}", 1, 1, 7, 0, "(1 - 7c - sqrt(-73c^2 + 18c - 1))/2",
                       [](double c) { return (1 - 7 * c - rt(-73 * c * c + 18 * c - 1)) / 2; },
                       ep(Z2, false, kZ[2]), ep("1/11", false, kZ[1]), B));
    t.push_back(closed("nu{1,2,6}", 1, 2, 6, 0, "2c - sqrt(12c^2 - c)",
                       [](double c) { return 2 * c - rt(12 * c * c - c); },
                       ep("1/12", false, kZ[3]), ep("1/11", false, kZ[1]), B));
    t.push_back(closed("nu{1,3,5}", 1, 3, 5, 0, "(1 - 10c + sqrt(108c^2 - 20c + 1))/4",
                       [](double c) { return (1 - 10 * c + rt(108 * c * c - 20 * c + 1)) / 4; },
                       ep(Z4, false, kZ[4]), ep("1/11", false, kZ[1]), B));
    t.push_back(cubic("nu{1,4,4}", 1, 4, 4, 0, "root 2 of 16b^3 + (41c-8)b^2 + (19c^2-10c+1)b + c^3",
                      [](double c) { return Cubic{16, 41 * c - 8, 19 * c * c - 10 * c + 1, c * c * c}; }, 2,
                      ep("y", false, kZ[5]), ep("1/11", false, kZ[1]), B));
    t.push_back(closed("nu{1,6,2}", 1, 6, 2, 0, "(3 - 8c - sqrt(6c - 17c^2))/18",
                       [](double c) { return (3 - 8 * c - rt(6 * c - 17 * c * c)) / 18; },
                       ep(Z7, false, kZ[7]), ep("1/11", false, kZ[1]), B));
    t.push_back(closed("nu{1,7,1}", 1, 7, 1, 0, "(4 - 3c - sqrt(8c - 7c^2))/32",
                       [](double c) { return (4 - 3 * c - rt(8 * c - 7 * c * c)) / 32; },
                       ep("0", false, kZ[8]), ep("1/11", false, kZ[1]), B));
    t.push_back(closed("nu{1,5,3}", 1, 5, 3, 0, "(1 - 6c)/5", [](double c) { return (1 - 6 * c) / 5; },
                       ep("1/21", false, kZ[6]), ep("1/11", false, kZ[1]), L1, false));

    t.push_back(closed("nu{2,1,6}", 2, 1, 6, 0, "1 - 10c - 2 sqrt(12c^2 - c)",
                       [](double c) { return 1 - 10 * c - 2 * rt(12 * c * c - c); },
                       ep("1/12", false, kZ[3]), ep(Z2, false, kZ[2]), B));
    t.push_back(cubic("nu{2,2,5}", 2, 2, 5, 0, "root 2 of -4b^3 + (4-30c)b^2 + (-37c^2+14c-1)b - 2c^3",
                      [](double c) { return Cubic{-4, 4 - 30 * c, -37 * c * c + 14 * c - 1, -2 * c * c * c}; }, 2,
                      ep(Z4, false, kZ[4]), ep(Z2, false, kZ[2]), B));
    t.push_back(cubic("nu{2,3,4}", 2, 3, 4, 0, "root 2 of -9b^3 + (6-45c)b^2 + (-56c^2+18c-1)b - c(1-6c)^2",
                      [](double c) { return Cubic{-9, 6 - 45 * c, -56 * c * c + 18 * c - 1, -c * sq(1 - 6 * c)}; }, 2,
                      ep("y", false, kZ[5]), ep(Z2, false, kZ[2]), B));
    t.push_back(cubic("nu{2,4,3}^(1)", 2, 4, 3, 1, "root 2 of -16b^3 + (8-76c)b^2 + (-45c^2+22c-1)b - c(1-3c)^2",
                      [](double c) { return Cubic{-16, 8 - 76 * c, -45 * c * c + 22 * c - 1, -c * sq(1 - 3 * c)}; }, 2,
                      ep("1/21", false, kZ[6]), ep(S243, true, P243), L1));
    t.push_back(closed("nu{2,4,3}^(2)", 2, 4, 3, 2, "(1 - 4c - sqrt(2c - 9c^2))/4",
                       [](double c) { return (1 - 4 * c - rt(2 * c - 9 * c * c)) / 4; },
                       ep(S243, true, P243), ep(Z2, false, kZ[2]), L2));
    t.push_back(point(P243, 2, 4, 3, S243, "(36 - (19/117)(85 - 14 sqrt(10)))/(7(85 - 14 sqrt(10)))"));
    t.push_back(closed("nu{2,5,2}", 2, 5, 2, 0, "(6 - 13c - sqrt(-201c^2 + 66c - 1))/37",
                       [](double c) { return (6 - 13 * c - rt(-201 * c * c + 66 * c - 1)) / 37; },
                       ep(Z7, false, kZ[7]), ep(Z2, false, kZ[2]), B));
    t.push_back(closed("nu{2,6,1}", 2, 6, 1, 0, "(2 - c - sqrt(4c - 3c^2))/16",
                       [](double c) { return (2 - c - rt(4 * c - 3 * c * c)) / 16; },
                       ep("0", false, kZ[8]), ep(Z2, false, kZ[2]), B));

    t.push_back(closed("nu{3,1,5}", 3, 1, 5, 0, "(1 - 26c + 3 sqrt(1 - 20c + 132c^2))/4",
                       [](double c) { return (1 - 26 * c + 3 * rt(1 - 20 * c + 132 * c * c)) / 4; },
                       ep(Z4, false, kZ[4]), ep("1/12", false, kZ[3]), B));
    t.push_back(cubic("nu{3,2,4}", 3, 2, 4, 0,
                      "root 1 of 8b^3 + (-12-15c)b^2 + (6-30c+114c^2)b + (-1+12c-39c^2+c^3)",
                      [](double c) {
                          return Cubic{8, -12 - 15 * c, 6 - 30 * c + 114 * c * c, -1 + 12 * c - 39 * c * c + c * c * c};
                      },
                      1, ep("y", false, kZ[5]), ep("1/12", false, kZ[3]), B));
    t.push_back(closed("nu{3,3,3}^(1)", 3, 3, 3, 1, "(3 - sqrt(3(-1 + 24c - 36c^2)))/18",
                       [](double c) { return (3 - rt(3 * (-1 + 24 * c - 36 * c * c))) / 18; },
                       ep("1/21", false, kZ[6]), ep("1/12", false, kZ[3]), L1));
    t.push_back(cubic("nu{3,4,2}", 3, 4, 2, 0,
                      "root 1 of b^3 + (-39+114c)b^2 + (12-30c-15c^2)b + (-1+6c-12c^2+8c^3)",
                      [](double c) {
                          return Cubic{1, -39 + 114 * c, 12 - 30 * c - 15 * c * c, -1 + 6 * c - 12 * c * c + 8 * c * c * c};
                      },
                      1, ep(Z7, false, kZ[7]), ep("1/12", false, kZ[3]), B));
    t.push_back(closed("nu{3,5,1}", 3, 5, 1, 0, "(8 + 13c - 3 sqrt(16c + 33c^2))/64",
                       [](double c) { return (8 + 13 * c - 3 * rt(16 * c + 33 * c * c)) / 64; },
                       ep("0", false, kZ[8]), ep("1/12", false, kZ[3]), B));

    t.push_back(cubic("nu{4,1,4}", 4, 1, 4, 0,
                      "root 1 of 3b^3 - 7b^2 + (5-48c+112c^2)b + (-1+16c-48c^2-32c^3)",
                      [](double c) {
                          return Cubic{3, -7, 5 - 48 * c + 112 * c * c, -1 + 16 * c - 48 * c * c - 32 * c * c * c};
                      },
                      1, ep("y", false, kZ[5]), ep(Z4, false, kZ[4]), B));
    t.push_back(closed("nu{4,2,3}^(1)", 4, 2, 3, 1, "(2 - 9c - sqrt(-1 + 24c - 54c^2))/10",
                       [](double c) { return (2 - 9 * c - rt(-1 + 24 * c - 54 * c * c)) / 10; },
                       ep("1/21", false, kZ[6]), ep(Z4, false, kZ[4]), L1));
    t.push_back(cubic("nu{4,3,2}", 4, 3, 2, 0,
                      "root 2 of 11b^3 + (31-2c)b^2 + (-11+36c-52c^2)b + (1-10c+36c^2-40c^3)",
                      [](double c) {
                          return Cubic{11, 31 - 2 * c, -11 + 36 * c - 52 * c * c, 1 - 10 * c + 36 * c * c - 40 * c * c * c};
                      },
                      2, ep(Z7, false, kZ[7]), ep(Z4, false, kZ[4]), B));
    t.push_back(cubic("nu{4,4,1}", 4, 4, 1, 0,
                      "root 1 of 256b^3 + (-128-128c)b^2 + (20+24c-44c^2)b + (-1+c+c^2-c^3)",
                      [](double c) {
                          return Cubic{256, -128 - 128 * c, 20 + 24 * c - 44 * c * c, -1 + c + c * c - c * c * c};
                      },
                      1, ep("0", false, kZ[8]), ep(Z4, false, kZ[4]), B));

    t.push_back(cubic("nu{5,1,3}^(1)", 5, 1, 3, 1,
                      "root 1 of b^3 + (-3-161c)b^2 + (3+22c-168c^2)b + (-1+14c+18c^2-153c^3)",
                      [](double c) {
                          return Cubic{1, -3 - 161 * c, 3 + 22 * c - 168 * c * c, -1 + 14 * c + 18 * c * c - 153 * c * c * c};
                      },
                      1, ep("1/21", false, kZ[6]), ep("y", false, kZ[5]), L1));
    t.push_back(cubic("nu{5,2,2}", 5, 2, 2, 0,
                      "root 2 of 237b^3 + (-58+276c)b^2 + (-1-56c+66c^2)b + (1-16c+77c^2-98c^3)",
                      [](double c) {
                          return Cubic{237, -58 + 276 * c, -1 - 56 * c + 66 * c * c, 1 - 16 * c + 77 * c * c - 98 * c * c * c};
                      },
                      2, ep(Z7, false, kZ[7]), ep("y", false, kZ[5]), B));
    t.push_back(cubic("nu{5,3,1}", 5, 3, 1, 0,
                      "root 2 of 128b^3 + (32+268c)b^2 + (-14-72c+86c^2)b + (1-3c+3c^2-c^3)",
                      [](double c) {
                          return Cubic{128, 32 + 268 * c, -14 - 72 * c + 86 * c * c, 1 - 3 * c + 3 * c * c - c * c * c};
                      },
                      2, ep("0", false, kZ[8]), ep("y", false, kZ[5]), B));

    t.push_back(closed("nu{6,1,2}^(1)", 6, 1, 2, 1, "1 + 64c - 12 sqrt(c + 28c^2)",
                       [](double c) { return 1 + 64 * c - 12 * rt(c + 28 * c * c); },
                       ep(Z7, false, kZ[7]), ep("1/21", false, kZ[6]), L1));
    t.push_back(closed("nu{6,2,1}^(1)", 6, 2, 1, 1, "(1 + 8c - 3 sqrt(2c + 7c^2))/8",
                       [](double c) { return (1 + 8 * c - 3 * rt(2 * c + 7 * c * c)) / 8; },
                       ep("1/57", true, P621), ep("1/21", false, kZ[6]), L1));
    t.push_back(closed("nu{6,2,1}^(2)", 6, 2, 1, 2, "(2 - 5c - 3 sqrt(4c - 3c^2))/16",
                       [](double c) { return (2 - 5 * c - 3 * rt(4 * c - 3 * c * c)) / 16; },
                       ep("0", false, kZ[8]), ep("1/57", true, P621), L2));
    t.push_back(point(P621, 6, 2, 1, "1/57", "4/57"));

    t.push_back(closed("nu{7,1,1}", 7, 1, 1, 0, "(4 - 11c - 7 sqrt(8c - 7c^2))/32",
                       [](double c) { return (4 - 11 * c - 7 * rt(8 * c - 7 * c * c)) / 32; },
                       ep("0", false, kZ[8]), ep(Z7, false, kZ[7]), B));
    return t;
}

}  // namespace

const std::vector<FamilySpec>& list_families() {
    static const std::vector<FamilySpec> t = build_table();
    return t;
}

const FamilySpec& find_family(const std::string& id) {
    for (const auto& f : list_families())
        if (f.id == id) return f;
    throw Error(ErrorCode::UnknownFamily, "no family with id " + id);
}

std::vector<const FamilySpec*> select_families(const std::string& sel) {
    std::vector<const FamilySpec*> out;
    static const std::regex table_re(R"(nu([1-7]))");
    static const std::regex triple_re(R"(nu\{(\d),(\d),(\d)\})");
    std::smatch m;
    for (const auto& f : list_families()) {
        bool take = false;
        if (sel == "all") {
            take = true;
        } else if (std::regex_match(sel, m, table_re)) {
            // extreme rows with this leading multiplicity
            take = f.mu_a == std::stoi(m[1]) && f.extreme;
        } else if (std::regex_match(sel, m, triple_re)) {
            take = f.mu_a == std::stoi(m[1]) && f.mu_b == std::stoi(m[2]) && f.mu_c == std::stoi(m[3]);
        } else {
            take = f.id == sel;
        }
        if (take) out.push_back(&f);
    }
    if (out.empty()) throw Error(ErrorCode::UnknownFamily, "selector matches nothing: " + sel);
    return out;
}

FamilyPoint eval_family(const FamilySpec& f, double c) {
    bool below = f.lo.closed ? c < f.lo.value : c <= f.lo.value;
    bool above = f.hi.closed ? c > f.hi.value : c >= f.hi.value;
    if (!std::isfinite(c) || below || above) {
        throw Error(ErrorCode::OutOfRange, f.id + " is defined on " + (f.lo.closed ? "[" : "(") + fmt17(f.lo.value) +
                                               ", " + fmt17(f.hi.value) + (f.hi.closed ? "]" : ")") + ", got c=" +
                                               fmt17(c));
    }
    if (f.form == FormKind::Point) {
        Spectrum s = special_point(f.id);
        ThreeLevel t{f.mu_a, f.mu_b, f.mu_c, s.lambda(1), s.lambda(f.mu_a + 1), s.lambda(9)};
        return {t, s};
    }
    double b;
    if (f.form == FormKind::Closed) {
        b = f.b_closed(c);
    } else {
        Cubic k = f.cubic(c);
        auto roots = real_roots({k[0], k[1], k[2], k[3]});
        if (static_cast<int>(roots.size()) < f.root_index) {
            throw Error(ErrorCode::RootSelectionFailure,
                        f.id + ": only " + std::to_string(roots.size()) + " real roots at c=" + fmt17(c));
        }
        b = roots[f.root_index - 1];
    }
    double a = (1.0 - f.mu_b * b - f.mu_c * c) / f.mu_a;
    if (!(a > b && b > c && c > 0.0)) {
        throw Error(ErrorCode::RootSelectionFailure, f.id + ": selected branch gives a=" + fmt17(a) + " b=" + fmt17(b) +
                                                         " c=" + fmt17(c));
    }
    ThreeLevel t{f.mu_a, f.mu_b, f.mu_c, a, b, c};
    return {t, from_three_level(t)};
}

std::vector<double> sample_c(const FamilySpec& f, int steps, double margin) {
    if (f.form == FormKind::Point) return {f.lo.value};
    if (steps < 1) throw Error(ErrorCode::OutOfRange, "steps must be positive");
    double w = f.hi.value - f.lo.value;
    double lo = f.lo.closed ? f.lo.value : f.lo.value + margin * w;
    double hi = f.hi.closed ? f.hi.value : f.hi.value - margin * w;
    if (steps == 1) return {0.5 * (lo + hi)};
    std::vector<double> out;
    for (int k = 0; k < steps; ++k) out.push_back(k == steps - 1 ? hi : lo + (hi - lo) * k / (steps - 1));
    return out;
}

Spectrum limit_target(const std::string& name) {
    if (name.rfind("zeta", 0) == 0) return zeta(std::stoi(name.substr(4)));
    return special_point(name);
}

double verify_limit(const FamilySpec& f, End end, double eps) {
    const Endpoint& e = end == End::Lo ? f.lo : f.hi;
    if (eps < 0.0 || (eps == 0.0 && !e.closed)) throw Error(ErrorCode::OutOfRange, "eps must be positive on an open end");
    double c = end == End::Lo ? e.value + eps : e.value - eps;
    Spectrum s = eval_family(f, c).spectrum;
    Spectrum t = limit_target(e.limit);
    double d = 0.0;
    for (std::size_t i = 0; i < kDim; ++i) d = std::max(d, std::abs(s[i] - t[i]));
    return d;
}

Nu153Decomposition nu153_decompose(double c) {
    const FamilySpec& f = find_family("nu{1,5,3}");
    if (!(c >= f.lo.value && c <= f.hi.value)) throw Error(ErrorCode::OutOfRange, "nu{1,5,3} needs 1/21 <= c <= 1/11");
    Spectrum s = (c > f.lo.value && c < f.hi.value) ? eval_family(f, c).spectrum
                                                     : (c == f.lo.value ? zeta(6) : zeta(1));
    double x = 11.0 * (21.0 * c - 1.0) / 10.0;
    Spectrum z1 = zeta(1), z6 = zeta(6);
    double r = 0.0;
    for (std::size_t i = 0; i < kDim; ++i) r = std::max(r, std::abs(s[i] - (x * z1[i] + (1.0 - x) * z6[i])));
    return {x, z1, z6, r};
}

Spectrum special_point(const std::string& id) {
    if (id == P243) return nu243_point();
    if (id == P621) return nu621_point();
    throw Error(ErrorCode::UnknownFamily, "no special point " + id);
}

std::vector<ThreeLevel> three_level_boundary(int ma, int mb, int mc, double c, Which which) {
    auto det_at = [&](double b) {
        double a = (1.0 - mb * b - mc * c) / ma;
        Vec9 v{};
        int k = 0;
        for (int i = 0; i < ma; ++i) v[k++] = a;
        for (int i = 0; i < mb; ++i) v[k++] = b;
        for (int i = 0; i < mc; ++i) v[k++] = c;
        return det3(l_template(which, v));
    };
    // det is a cubic in b once a is eliminated through the trace
    const double nodes[4] = {0.0, 0.1, 0.2, 0.3};
    Eigen::Matrix4d vm;
    Eigen::Vector4d rhs;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) vm(i, j) = std::pow(nodes[i], 3 - j);
        rhs(i) = det_at(nodes[i]);
    }
    Eigen::Vector4d k = vm.fullPivLu().solve(rhs);
    std::vector<ThreeLevel> out;
    for (double b : real_roots({k(0), k(1), k(2), k(3)})) {
        // one secant-free Newton pass on the exact determinant
        for (int it = 0; it < 3; ++it) {
            double h = 1e-7;
            double d = (det_at(b + h) - det_at(b - h)) / (2 * h);
            if (d == 0.0) break;
            double nb = b - det_at(b) / d;
            if (!(std::abs(det_at(nb)) < std::abs(det_at(b)))) break;
            b = nb;
        }
        double a = (1.0 - mb * b - mc * c) / ma;
        if (a > b && b > c && c > 0.0) out.push_back({ma, mb, mc, a, b, c});
    }
    return out;
}

std::optional<Spectrum> resolve_named(const std::string& name) {
    static const std::regex zeta_re(R"(zeta([1-8]))");
    static const std::regex nu_re(R"((nu\{\d,\d,\d\}(?:\^\(\d\))?)(?:@(.+))?)");
    std::smatch m;
    if (name == "uniform") return uniform_spectrum();
    if (std::regex_match(name, m, zeta_re)) return zeta(std::stoi(m[1]));
    if (std::regex_match(name, m, nu_re)) {
        const FamilySpec& f = find_family(m[1]);
        if (f.form == FormKind::Point && !m[2].matched) return special_point(f.id);
        if (!m[2].matched) throw Error(ErrorCode::OutOfRange, f.id + " needs @c");
        std::string cs = m[2];
        std::size_t used = 0;
        double c = 0.0;
        try {
            c = std::stod(cs, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != cs.size()) throw ParseError("bad c value '" + cs + "'", 1, static_cast<int>(m.position(2)) + 1);
        return eval_family(f, c).spectrum;
    }
    return std::nullopt;
}

}  // namespace qap
