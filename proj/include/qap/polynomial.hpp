#pragma once

#include <vector>

namespace qap {

// coeffs[0] is the leading coefficient.
double poly_eval(const std::vector<double>& coeffs, double x);

// Real roots in ascending order, counted with multiplicity. Roots come from
// companion-matrix eigenvalues and are then polished with Newton steps.
// A conjugate pair whose imaginary part is below imag_tol (relative) is
// treated as a real double root.
std::vector<double> real_roots(const std::vector<double>& coeffs, double imag_tol = 1e-7);

// Bisection on a sign change in [lo, hi].
double bisect_root(const std::vector<double>& coeffs, double lo, double hi);

}  // namespace qap
