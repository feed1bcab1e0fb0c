#include "qap/extremality.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include <Eigen/SVD>

#include "qap/error.hpp"

namespace qap {

namespace {

void fix_sign(Vec9& v) {
    for (double x : v) {
        if (std::abs(x) > 1e-12) {
            if (x < 0) for (double& y : v) y = -y;
            return;
        }
    }
}

std::optional<Spectrum> shifted(const Spectrum& s, const Vec9& probe, double delta) {
    double ps = 0.0;
    for (double p : probe) ps += p;
    double scale = 1.0 + delta * ps;
    if (scale <= 0.0) return std::nullopt;
    Vec9 v;
    for (std::size_t i = 0; i < kDim; ++i) v[i] = (s[i] + delta * probe[i]) / scale;
    try {
        return make_spectrum(v, SpectrumOptions{.renormalize = true});
    } catch (const Error&) {
        return std::nullopt;
    }
}

}  // namespace

std::vector<Vec3> null_space(const Mat3& m, double tol) {
    SymEigen3 e = sym_eigen3(m);
    std::vector<Vec3> out;
    for (int i = 0; i < 3; ++i)
        if (std::abs(e.values[i]) <= tol) out.push_back(e.vectors[i]);
    return out;
}

int TSystem::sum_rows() const {
    return static_cast<int>(std::count_if(rows.begin(), rows.end(), [](auto& r) { return r.kind == RowKind::SumZero; }));
}
int TSystem::equality_rows() const {
    return static_cast<int>(std::count_if(rows.begin(), rows.end(), [](auto& r) { return r.kind == RowKind::Equality; }));
}
int TSystem::l_rows() const {
    return static_cast<int>(std::count_if(rows.begin(), rows.end(), [](auto& r) { return r.kind == RowKind::LRow; }));
}

TSystem admissible_rows(const Spectrum& s, double group_tol) {
    TSystem sys;
    Vec9 ones;
    ones.fill(1.0);
    sys.rows.push_back({ones, RowKind::SumZero, "sum"});
    MultiplicityPattern p = pattern(s, group_tol);
    for (int k = 0; k + 1 < static_cast<int>(kDim); ++k) {
        if (!p.same_group(k, k + 1)) continue;
        Vec9 r{};
        r[k] = 1.0;
        r[k + 1] = -1.0;
        sys.rows.push_back({r, RowKind::Equality, "eq(" + std::to_string(k + 1) + "," + std::to_string(k + 2) + ")"});
    }
    return sys;
}

void append_l_rows(TSystem& sys, Which which, const Vec3& w, const std::string& tag) {
    // Row i, column k: (T(e_k) w)_i, using linearity of the template.
    std::array<Vec9, 3> rows{};
    for (std::size_t k = 0; k < kDim; ++k) {
        Vec9 e{};
        e[k] = 1.0;
        Mat3 t = l_template(which, e);
        for (int i = 0; i < 3; ++i) rows[i][k] = t[i][0] * w[0] + t[i][1] * w[1] + t[i][2] * w[2];
    }
    for (int i = 0; i < 3; ++i) sys.rows.push_back({rows[i], RowKind::LRow, tag + ".r" + std::to_string(i)});
}

TSystem build_t_system(const Spectrum& s, const ExtremalityOptions& opts) {
    MembershipVerdict v = classify(s, opts.classify);
    if (v.membership != Membership::Boundary) {
        throw Error(ErrorCode::NotBoundary, std::string("spectrum classifies as ") + to_string(v.membership));
    }
    TSystem sys = admissible_rows(s, opts.group_tol);
    auto add = [&](Which which, const Mat3& m, const char* name) {
        std::vector<Vec3> basis = null_space(m, opts.null_tol * std::max(1.0, frobenius(m)));
        if (basis.empty()) basis.push_back(sym_eigen3(m).vectors[0]);
        for (std::size_t j = 0; j < basis.size(); ++j)
            append_l_rows(sys, which, basis[j], std::string(name) + ".w" + std::to_string(j));
    };
    if (v.active == Active::L1Zero || v.active == Active::Both) add(Which::L1, build_L1(s), "L1");
    if (v.active == Active::L2Zero || v.active == Active::Both) add(Which::L2, build_L2(s), "L2");
    return sys;
}

const char* to_string(Extremality e) { return e == Extremality::Extreme ? "Extreme" : "NotExtreme"; }

namespace {

std::vector<Vec9> right_null(const TSystem& sys, double rank_tol, int& rank, std::vector<double>& sv) {
    const int m = static_cast<int>(sys.rows.size());
    // Pad to at least 9 rows so the full right singular basis is available.
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(std::max(m, 9), 9);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < 9; ++k) a(i, k) = sys.rows[i].coeffs[k];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    sv.assign(s.data(), s.data() + s.size());
    double smax = s.size() ? s(0) : 0.0;
    rank = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > rank_tol * smax) ++rank;
    std::vector<Vec9> basis;
    for (int c = rank; c < 9; ++c) {
        Vec9 v;
        for (int k = 0; k < 9; ++k) v[k] = svd.matrixV()(k, c);
        fix_sign(v);
        basis.push_back(v);
    }
    return basis;
}

}  // namespace

ExtremalityResult rank_analysis(const TSystem& sys, double rank_tol) {
    ExtremalityResult r;
    r.null_basis = right_null(sys, rank_tol, r.rank, r.singular_values);
    r.verdict = r.rank == 9 ? Extremality::Extreme : Extremality::NotExtreme;
    return r;
}

ExtremalityResult extremality_test(const Spectrum& s, const ExtremalityOptions& opts) {
    return rank_analysis(build_t_system(s, opts), opts.rank_tol);
}

std::vector<Vec9> admissible_directions(const Spectrum& s, double group_tol) {
    int rank;
    std::vector<double> sv;
    return right_null(admissible_rows(s, group_tol), 1e-9, rank, sv);
}

bool interior_line_test(const Spectrum& s, const Vec9& probe, double eps, const ClassifyOptions& opts) {
    auto plus = shifted(s, probe, eps);
    auto minus = shifted(s, probe, -eps);
    return plus && minus && classify(*plus, opts).ap() && classify(*minus, opts).ap();
}

bool interior_line_test(const Spectrum& s, const Spectrum& probe, double eps, const ClassifyOptions& opts) {
    return interior_line_test(s, probe.values(), eps, opts);
}

double angle_between(const Vec9& x, const Vec9& y) {
    double xx = 0, yy = 0, xy = 0;
    for (std::size_t i = 0; i < kDim; ++i) {
        xx += x[i] * x[i];
        yy += y[i] * y[i];
        xy += x[i] * y[i];
    }
    double nx = std::sqrt(xx), ny = std::sqrt(yy), sgn = xy < 0 ? -1.0 : 1.0;
    // chord length between unit vectors; stable for tiny angles
    double d2 = 0;
    for (std::size_t i = 0; i < kDim; ++i) {
        double d = x[i] / nx - sgn * y[i] / ny;
        d2 += d * d;
    }
    return 2.0 * std::asin(std::min(1.0, std::sqrt(d2) / 2.0));
}

}  // namespace qap
