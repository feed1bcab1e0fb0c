#include "qap/oracle.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "qap/error.hpp"
#include "qap/extremality.hpp"

namespace qap {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) { return splitmix64(splitmix64(seed) ^ index); }

Mat9c haar_unitary(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    Mat9c z;
    for (int j = 0; j < 9; ++j)
        for (int i = 0; i < 9; ++i) {
            double re = g(rng);
            double im = g(rng);
            z(i, j) = {re, im};
        }
    Eigen::HouseholderQR<Mat9c> qr(z);
    Mat9c q = qr.householderQ();
    const auto& r = qr.matrixQR();
    for (int j = 0; j < 9; ++j) {
        std::complex<double> d = r(j, j);
        double n = std::abs(d);
        q.col(j) *= n > 0 ? d / n : 1.0;
    }
    return q;
}

Mat9c partial_transpose(const Mat9c& m) {
    Mat9c out;
    for (int i = 0; i < 3; ++i)
        for (int a = 0; a < 3; ++a)
            for (int j = 0; j < 3; ++j)
                for (int b = 0; b < 3; ++b) out(3 * i + b, 3 * j + a) = m(3 * i + a, 3 * j + b);
    return out;
}

double min_pt_eigenvalue(const Spectrum& s, const Mat9c& u) {
    Eigen::Matrix<double, 9, 1> d;
    for (int i = 0; i < 9; ++i) d(i) = s[i];
    Mat9c rho = u * d.asDiagonal() * u.adjoint();
    Mat9c pt = partial_transpose(rho);
    pt = (0.5 * (pt + pt.adjoint())).eval();
    Eigen::SelfAdjointEigenSolver<Mat9c> es(pt, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

McReport mc_ppt_scan(const Spectrum& s, std::uint64_t samples, std::uint64_t seed) {
    auto t0 = std::chrono::steady_clock::now();
    McReport r{std::numeric_limits<double>::infinity(), 0, 0, samples, seed, 0.0};
    for (std::uint64_t i = 0; i < samples; ++i) {
        std::uint64_t ss = sample_seed(seed, i);
        double e = min_pt_eigenvalue(s, haar_unitary(ss));
        if (e < r.min_pt_eigenvalue) {
            r.min_pt_eigenvalue = e;
            r.argmin_seed = ss;
            r.argmin_index = i;
        }
    }
    r.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

namespace {

std::optional<Spectrum> strict_ap(const Vec9& v, double psd_tol) {
    std::optional<Spectrum> s;
    try {
        s = make_spectrum(v, SpectrumOptions{.renormalize = true});
    } catch (const Error&) {
        return std::nullopt;
    }
    if (min_eigenvalue(build_L1(*s)) < -psd_tol || min_eigenvalue(build_L2(*s)) < -psd_tol) return std::nullopt;
    return s;
}

}  // namespace

std::optional<Witness> perturbation_decompose(const Spectrum& s, const Vec9& t_in, double eps_max,
                                              const WitnessOptions& opts) {
    double n = 0;
    for (double x : t_in) n += x * x;
    n = std::sqrt(n);
    if (n == 0.0) throw Error(ErrorCode::InvalidDirection, "zero direction");
    Vec9 t;
    for (std::size_t i = 0; i < kDim; ++i) t[i] = t_in[i] / n;
    for (const auto& row : admissible_rows(s).rows) {
        double r = 0;
        for (std::size_t i = 0; i < kDim; ++i) r += row.coeffs[i] * t[i];
        if (std::abs(r) > opts.admissible_tol) {
            throw Error(ErrorCode::InvalidDirection, "direction violates row " + row.tag);
        }
    }

    auto both = [&](double eps) -> std::optional<Witness> {
        Vec9 p, m;
        for (std::size_t i = 0; i < kDim; ++i) {
            p[i] = s[i] + eps * t[i];
            m[i] = s[i] - eps * t[i];
        }
        auto a = strict_ap(p, opts.psd_tol);
        auto b = strict_ap(m, opts.psd_tol);
        if (a && b) return Witness{*a, *b, eps};
        return std::nullopt;
    };

    if (auto w = both(eps_max)) return w;
    double lo = 0.0, hi = eps_max;
    std::optional<Witness> best;
    for (int it = 0; it < opts.iterations; ++it) {
        double mid = 0.5 * (lo + hi);
        if (auto w = both(mid)) {
            lo = mid;
            best = w;
        } else {
            hi = mid;
        }
    }
    if (best && best->eps >= opts.min_eps) return best;
    return std::nullopt;
}

}  // namespace qap
