#pragma once

#include <string>
#include <vector>

#include "qap/criterion.hpp"
#include "qap/spectrum.hpp"

namespace qap {

// Orthonormal basis of eigenvectors whose eigenvalue lies in [-tol, tol].
std::vector<Vec3> null_space(const Mat3& m, double tol);

enum class RowKind { SumZero, Equality, LRow };

struct TRow {
    Vec9 coeffs;
    RowKind kind;
    std::string tag;  // e.g. "eq(3,4)" or "L1.w0.r2"
};

struct TSystem {
    std::vector<TRow> rows;
    int sum_rows() const;
    int equality_rows() const;
    int l_rows() const;
};

struct ExtremalityOptions {
    double group_tol = 1e-10;
    double null_tol = 1e-8;   // eigenvalue window for the L null space
    double rank_tol = 1e-9;   // relative to the largest singular value
    ClassifyOptions classify{};
};

// Rows that every admissible perturbation must satisfy: zero trace and
// equal shifts inside each multiplicity group.
TSystem admissible_rows(const Spectrum& s, double group_tol = 1e-10);

// Three rows T(t) w = 0 for one null vector w of the chosen template.
void append_l_rows(TSystem& sys, Which which, const Vec3& w, const std::string& tag);

// Requires a Boundary spectrum (NotBoundary otherwise).
TSystem build_t_system(const Spectrum& s, const ExtremalityOptions& opts = {});

enum class Extremality { Extreme, NotExtreme };
const char* to_string(Extremality e);

struct ExtremalityResult {
    Extremality verdict;
    int rank;
    std::vector<double> singular_values;  // descending
    std::vector<Vec9> null_basis;         // orthonormal, empty when Extreme
};

ExtremalityResult rank_analysis(const TSystem& sys, double rank_tol = 1e-9);
ExtremalityResult extremality_test(const Spectrum& s, const ExtremalityOptions& opts = {});

// Orthonormal basis for directions obeying the admissible rows.
std::vector<Vec9> admissible_directions(const Spectrum& s, double group_tol = 1e-10);

// True when s +/- delta*probe (renormalized by 1 +/- delta*sum(probe)) are both
// valid AP spectra for delta = eps.
bool interior_line_test(const Spectrum& s, const Vec9& probe, double eps, const ClassifyOptions& opts = {});
bool interior_line_test(const Spectrum& s, const Spectrum& probe, double eps, const ClassifyOptions& opts = {});

double angle_between(const Vec9& x, const Vec9& y);  // in [0, pi/2], sign-insensitive

}  // namespace qap
