#pragma once

#include <array>

#include "qap/spectrum.hpp"

namespace qap {

using Mat3 = std::array<std::array<double, 3>, 3>;
using Vec3 = std::array<double, 3>;

enum class Which { L1, L2 };

// Matrix templates applied to an arbitrary 9-vector (not necessarily a spectrum).
// They are linear in x, which the extremality module relies on.
Mat3 l1_template(const Vec9& x);
Mat3 l2_template(const Vec9& x);
Mat3 l_template(Which w, const Vec9& x);

Mat3 build_L1(const Spectrum& s);
Mat3 build_L2(const Spectrum& s);

double det3(const Mat3& m);
double frobenius(const Mat3& m);

struct SymEigen3 {
    Vec3 values;                 // ascending
    std::array<Vec3, 3> vectors; // vectors[i] belongs to values[i], unit norm
};

// Symmetric 3x3 eigendecomposition. Each eigenvector has its first
// nonzero coordinate positive.
SymEigen3 sym_eigen3(const Mat3& m);

double min_eigenvalue(const Mat3& m);

// 4 lambda7 lambda9 - (lambda1 - lambda8)^2
double corner_inequality(const Spectrum& s);

enum class Membership { Interior, Boundary, NotAP };
enum class Active { None, L1Zero, L2Zero, Both };

const char* to_string(Membership m);
const char* to_string(Active a);

struct ClassifyOptions {
    double det_tol = 1e-10;
    double psd_tol = 1e-10;
};

struct MembershipVerdict {
    Membership membership;
    Active active;
    double l1, l2;
    double min_eig_l1, min_eig_l2;
    bool rank_deficient;

    bool ap() const { return membership != Membership::NotAP; }
};

MembershipVerdict classify(const Spectrum& s, const ClassifyOptions& opts = {});
MembershipVerdict classify(const Spectrum& s, double tol);

}  // namespace qap
