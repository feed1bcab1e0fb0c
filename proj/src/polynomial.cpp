#include "qap/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Eigenvalues>

#include "qap/error.hpp"

namespace qap {

double poly_eval(const std::vector<double>& coeffs, double x) {
    double r = 0.0;
    for (double c : coeffs) r = r * x + c;
    return r;
}

namespace {

double poly_deriv(const std::vector<double>& coeffs, double x) {
    double r = 0.0;
    const int n = static_cast<int>(coeffs.size()) - 1;
    for (int i = 0; i < n; ++i) r = r * x + coeffs[i] * (n - i);
    return r;
}

double polish(const std::vector<double>& coeffs, double x) {
    double fx = std::abs(poly_eval(coeffs, x));
    for (int it = 0; it < 50 && fx > 0.0; ++it) {
        double d = poly_deriv(coeffs, x);
        if (d == 0.0) break;
        double nx = x - poly_eval(coeffs, x) / d;
        double fn = std::abs(poly_eval(coeffs, nx));
        if (!(fn < fx)) break;
        x = nx;
        fx = fn;
    }
    return x;
}

}  // namespace

std::vector<double> real_roots(const std::vector<double>& coeffs_in, double imag_tol) {
    std::vector<double> coeffs = coeffs_in;
    while (!coeffs.empty() && coeffs.front() == 0.0) coeffs.erase(coeffs.begin());
    const int n = static_cast<int>(coeffs.size()) - 1;
    if (n < 1) return {};

    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j) comp(0, j) = -coeffs[j + 1] / coeffs[0];
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);

    std::vector<double> out;
    for (int i = 0; i < n; ++i) {
        std::complex<double> z = es.eigenvalues()(i);
        if (std::abs(z.imag()) <= imag_tol * std::max(1.0, std::abs(z))) out.push_back(polish(coeffs, z.real()));
    }
    std::sort(out.begin(), out.end());
    return out;
}

double bisect_root(const std::vector<double>& coeffs, double lo, double hi) {
    double flo = poly_eval(coeffs, lo), fhi = poly_eval(coeffs, hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0)) throw Error(ErrorCode::RootSelectionFailure, "no sign change in bracket");
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        double fm = poly_eval(coeffs, mid);
        if (fm == 0.0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace qap
