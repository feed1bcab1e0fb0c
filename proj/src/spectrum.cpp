#include "qap/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "qap/error.hpp"

namespace qap {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NegativeEigenvalue: return "NegativeEigenvalue";
        case ErrorCode::NotNormalized: return "NotNormalized";
        case ErrorCode::OrderViolation: return "OrderViolation";
        case ErrorCode::NotBoundary: return "NotBoundary";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::RootSelectionFailure: return "RootSelectionFailure";
        case ErrorCode::UnknownFamily: return "UnknownFamily";
        case ErrorCode::InvalidDirection: return "InvalidDirection";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    }
    return "Unknown";
}

Spectrum make_spectrum(std::span<const double> values, const SpectrumOptions& opts) {
    if (values.size() != kDim) {
        throw Error(ErrorCode::NotNormalized, "expected 9 eigenvalues, got " + std::to_string(values.size()));
    }
    Vec9 v{};
    for (std::size_t i = 0; i < kDim; ++i) {
        double x = values[i];
        if (!std::isfinite(x)) throw Error(ErrorCode::NotNormalized, "non-finite eigenvalue");
        if (x < 0.0) {
            if (x < -opts.negative_tol) {
                std::ostringstream os;
                os.precision(17);
                os << "eigenvalue " << i + 1 << " is " << x;
                throw Error(ErrorCode::NegativeEigenvalue, os.str());
            }
            x = 0.0;
        }
        v[i] = x;
    }
    std::sort(v.begin(), v.end(), std::greater<>());

    double sum = 0.0;
    for (double x : v) sum += x;
    double dev = std::abs(sum - 1.0);
    if (dev > opts.trace_tol) {
        if (!opts.renormalize || dev > opts.renorm_window) {
            std::ostringstream os;
            os.precision(17);
            os << "trace is " << sum;
            throw Error(ErrorCode::NotNormalized, os.str());
        }
        for (double& x : v) x /= sum;
    }
    return Spectrum(v);
}

bool MultiplicityPattern::same_group(int i, int j) const {
    for (const auto& g : groups) {
        bool in_i = i >= g.first && i < g.first + g.multiplicity;
        bool in_j = j >= g.first && j < g.first + g.multiplicity;
        if (in_i || in_j) return in_i && in_j;
    }
    return false;
}

MultiplicityPattern pattern(const Spectrum& s, double tol) {
    MultiplicityPattern p;
    const auto& v = s.values();
    int start = 0;
    for (int k = 1; k <= static_cast<int>(kDim); ++k) {
        if (k == static_cast<int>(kDim) || v[start] - v[k] > tol) {
            double mean = 0.0;
            for (int j = start; j < k; ++j) mean += v[j];
            mean /= (k - start);
            p.groups.push_back({mean, k - start, start});
            start = k;
        }
    }
    return p;
}

Spectrum from_three_level(const ThreeLevel& t) {
    if (t.mu_a < 1 || t.mu_b < 1 || t.mu_c < 1 || t.mu_a + t.mu_b + t.mu_c != static_cast<int>(kDim)) {
        throw Error(ErrorCode::OrderViolation, "multiplicities must be positive and sum to 9");
    }
    if (!(t.a > t.b && t.b > t.c && t.c >= 0.0)) {
        std::ostringstream os;
        os.precision(17);
        os << "need a > b > c >= 0, got a=" << t.a << " b=" << t.b << " c=" << t.c;
        throw Error(ErrorCode::OrderViolation, os.str());
    }
    Vec9 v{};
    int k = 0;
    for (int i = 0; i < t.mu_a; ++i) v[k++] = t.a;
    for (int i = 0; i < t.mu_b; ++i) v[k++] = t.b;
    for (int i = 0; i < t.mu_c; ++i) v[k++] = t.c;
    return make_spectrum(v);
}

Spectrum uniform_spectrum() {
    Vec9 v;
    v.fill(1.0 / 9.0);
    return make_spectrum(v);
}

}  // namespace qap
