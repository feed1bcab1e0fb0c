#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qap {

inline constexpr std::size_t kDim = 9;

using Vec9 = std::array<double, kDim>;

struct SpectrumOptions {
    bool renormalize = false;
    double negative_tol = 1e-12;   // entries in [-negative_tol, 0) are clamped to zero
    double trace_tol = 1e-14;      // accepted as-is
    double renorm_window = 1e-9;   // rescaled when renormalize is set
};

// Sorted, unit-trace spectrum of a two-qutrit density matrix.
// values[0] is the largest eigenvalue.
class Spectrum {
public:
    const Vec9& values() const noexcept { return v_; }
    double operator[](std::size_t i) const { return v_[i]; }

    // 1-based accessor matching the usual lambda_1 >= ... >= lambda_9 labels.
    double lambda(int k) const { return v_[static_cast<std::size_t>(k - 1)]; }

    bool rank_deficient(double tol = 1e-14) const { return v_[kDim - 1] <= tol; }

    friend bool operator==(const Spectrum&, const Spectrum&) = default;

private:
    explicit Spectrum(const Vec9& v) : v_(v) {}
    Vec9 v_{};

    friend Spectrum make_spectrum(std::span<const double>, const SpectrumOptions&);
};

Spectrum make_spectrum(std::span<const double> values, const SpectrumOptions& opts = {});

inline Spectrum make_spectrum(std::initializer_list<double> values, const SpectrumOptions& opts = {}) {
    return make_spectrum(std::span<const double>(values.begin(), values.size()), opts);
}

struct Group {
    double value;
    int multiplicity;
    int first;  // 0-based index of the first member
};

struct MultiplicityPattern {
    std::vector<Group> groups;

    int distinct() const { return static_cast<int>(groups.size()); }
    bool same_group(int i, int j) const;  // 0-based indices
};

MultiplicityPattern pattern(const Spectrum& s, double tol = 1e-10);

struct ThreeLevel {
    int mu_a, mu_b, mu_c;
    double a, b, c;
};

// Expands a > b > c with multiplicities (mu_a, mu_b, mu_c) into a spectrum.
// Requires a unit trace within the default trace tolerance.
Spectrum from_three_level(const ThreeLevel& t);

Spectrum uniform_spectrum();

}  // namespace qap
