#pragma once

#include <complex>
#include <cstdint>
#include <optional>

#include <Eigen/Core>

#include "qap/criterion.hpp"
#include "qap/spectrum.hpp"

namespace qap {

using Mat9c = Eigen::Matrix<std::complex<double>, 9, 9>;

// Haar-distributed unitary from a QR of a complex Ginibre matrix with the
// phases of diag(R) divided out.
Mat9c haar_unitary(std::uint64_t seed);

// Per-sample seed; sample i of a scan always uses the same stream.
std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index);

// Transpose on the second qutrit: index (i,a),(j,b) -> (i,b),(j,a).
Mat9c partial_transpose(const Mat9c& m);

double min_pt_eigenvalue(const Spectrum& s, const Mat9c& u);

struct McReport {
    double min_pt_eigenvalue;
    std::uint64_t argmin_seed;
    std::uint64_t argmin_index;
    std::uint64_t samples;
    std::uint64_t seed;
    double elapsed_seconds;
};

McReport mc_ppt_scan(const Spectrum& s, std::uint64_t samples, std::uint64_t seed);

struct Witness {
    Spectrum alpha, beta;  // s = (alpha + beta)/2
    double eps;
};

struct WitnessOptions {
    double admissible_tol = 1e-10;  // row violation allowed for the unit direction
    double psd_tol = 1e-13;         // near machine precision on both endpoints
    double min_eps = 1e-5;          // smallest step accepted as a witness
    int iterations = 40;
};

// Largest eps <= eps_max (found by bisection) with both s +/- eps t AP.
// Throws InvalidDirection when t breaks the trace or multiplicity rows.
std::optional<Witness> perturbation_decompose(const Spectrum& s, const Vec9& t, double eps_max,
                                              const WitnessOptions& opts = {});

}  // namespace qap
