#include "qap/criterion.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace qap {

namespace {

// x is 0-based, so x[8] is lambda_9.
Mat3 sym(double d0, double d1, double d2, double o01, double o02, double o12) {
    return Mat3{{{d0, o01, o02}, {o01, d1, o12}, {o02, o12, d2}}};
}

void fix_sign(Vec3& v) {
    for (double x : v) {
        if (std::abs(x) > 1e-14) {
            if (x < 0) for (double& y : v) y = -y;
            return;
        }
    }
}

}  // namespace

Mat3 l1_template(const Vec9& x) {
    return sym(2 * x[8], 2 * x[6], 2 * x[3], x[7] - x[0], x[5] - x[1], x[4] - x[2]);
}

Mat3 l2_template(const Vec9& x) {
    return sym(2 * x[8], 2 * x[5], 2 * x[3], x[7] - x[0], x[6] - x[1], x[4] - x[2]);
}

Mat3 l_template(Which w, const Vec9& x) { return w == Which::L1 ? l1_template(x) : l2_template(x); }

Mat3 build_L1(const Spectrum& s) { return l1_template(s.values()); }
Mat3 build_L2(const Spectrum& s) { return l2_template(s.values()); }

double det3(const Mat3& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

double frobenius(const Mat3& m) {
    double s = 0.0;
    for (const auto& r : m)
        for (double x : r) s += x * x;
    return std::sqrt(s);
}

SymEigen3 sym_eigen3(const Mat3& m) {
    Eigen::Matrix3d a;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a(i, j) = m[i][j];
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(a);
    SymEigen3 out;
    for (int i = 0; i < 3; ++i) {
        out.values[i] = es.eigenvalues()(i);
        for (int j = 0; j < 3; ++j) out.vectors[i][j] = es.eigenvectors()(j, i);
        fix_sign(out.vectors[i]);
    }
    return out;
}

double min_eigenvalue(const Mat3& m) { return sym_eigen3(m).values[0]; }

double corner_inequality(const Spectrum& s) {
    double d = s.lambda(1) - s.lambda(8);
    return 4.0 * s.lambda(7) * s.lambda(9) - d * d;
}

const char* to_string(Membership m) {
    switch (m) {
        case Membership::Interior: return "Interior";
        case Membership::Boundary: return "Boundary";
        case Membership::NotAP: return "NotAP";
    }
    return "?";
}

const char* to_string(Active a) {
    switch (a) {
        case Active::None: return "None";
        case Active::L1Zero: return "L1Zero";
        case Active::L2Zero: return "L2Zero";
        case Active::Both: return "Both";
    }
    return "?";
}

MembershipVerdict classify(const Spectrum& s, const ClassifyOptions& opts) {
    Mat3 m1 = build_L1(s), m2 = build_L2(s);
    MembershipVerdict v{};
    v.l1 = det3(m1);
    v.l2 = det3(m2);
    v.min_eig_l1 = min_eigenvalue(m1);
    v.min_eig_l2 = min_eigenvalue(m2);
    v.rank_deficient = s.rank_deficient();
    v.active = Active::None;

    if (v.min_eig_l1 < -opts.psd_tol || v.min_eig_l2 < -opts.psd_tol) {
        v.membership = Membership::NotAP;
        return v;
    }
    auto zero = [&](double det, double mineig, const Mat3& m) {
        double n = std::max(1.0, frobenius(m));
        return std::abs(det) <= opts.det_tol * n * n * n || mineig <= opts.psd_tol;
    };
    bool z1 = zero(v.l1, v.min_eig_l1, m1);
    bool z2 = zero(v.l2, v.min_eig_l2, m2);
    if (z1 && z2) v.active = Active::Both;
    else if (z1) v.active = Active::L1Zero;
    else if (z2) v.active = Active::L2Zero;
    v.membership = v.active == Active::None ? Membership::Interior : Membership::Boundary;
    return v;
}

MembershipVerdict classify(const Spectrum& s, double tol) { return classify(s, ClassifyOptions{tol, tol}); }

}  // namespace qap
