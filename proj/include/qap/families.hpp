#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qap/criterion.hpp"
#include "qap/spectrum.hpp"

namespace qap {

// Two-level extreme points zeta1..zeta8.
Spectrum zeta(int k);

// Real root of x^3 - x^2 - 5x + 1 in (2, 3); sets the upper level of zeta5.
double zeta5_x();

// Second real root of 481 y^3 - 37 y^2 - 17 y + 1, approximately 0.056992.
double y_const();

struct NamedConstant {
    std::string name;
    std::string closed_form;
    double value;
};

// Interval endpoints used by the family table, smallest first.
const std::vector<NamedConstant>& endpoint_constants();
double endpoint_value(const std::string& name);

enum class FormKind { Closed, Cubic, Point };

struct Endpoint {
    std::string name;   // key into endpoint_constants()
    double value;
    bool closed;
    std::string limit;  // "zeta3", "nu{2,4,3}^(3)", ...
};

struct FamilySpec {
    std::string id;       // "nu{1,1,7}", "nu{2,4,3}^(1)"
    int mu_a, mu_b, mu_c;
    int variant;          // 0 when the multiplicity triple has a single branch
    FormKind form;
    std::string b_formula;
    double (*b_closed)(double c) = nullptr;
    std::array<double, 4> (*cubic)(double c) = nullptr;  // leading coefficient first, in b
    int root_index = 0;   // 1-based, ascending among real roots
    Endpoint lo, hi;
    Active active;        // which determinant vanishes along the family
    bool extreme;         // false only for the flagged nu{1,5,3} row
};

// Extreme families, the two splice points, and the flagged nu{1,5,3} row.
const std::vector<FamilySpec>& list_families();
const FamilySpec& find_family(const std::string& id);

// "all", "nu3" (extreme rows with mu_a = 3), "nu{2,4,3}" (all branches), or an exact id.
std::vector<const FamilySpec*> select_families(const std::string& selector);

struct FamilyPoint {
    ThreeLevel levels;
    Spectrum spectrum;
};

FamilyPoint eval_family(const FamilySpec& f, double c);

// Sample points: closed ends exactly, open ends moved inward by margin*(hi-lo).
std::vector<double> sample_c(const FamilySpec& f, int steps, double margin = 1e-9);

Spectrum limit_target(const std::string& name);

enum class End { Lo, Hi };

// Sup-norm distance between the family at the endpoint (moved inward by eps)
// and the limit state. eps = 0 is allowed on closed ends only.
double verify_limit(const FamilySpec& f, End end, double eps);

struct Nu153Decomposition {
    double x;
    Spectrum zeta1, zeta6;
    double residual;  // sup-norm of s - (x zeta1 + (1-x) zeta6)
};

Nu153Decomposition nu153_decompose(double c);

// "nu{2,4,3}^(3)" or "nu{6,2,1}^(3)"
Spectrum special_point(const std::string& id);

// All ordered (a > b > c > 0) three-level spectra with the given
// multiplicities and smallest level c on which det L vanishes.
std::vector<ThreeLevel> three_level_boundary(int mu_a, int mu_b, int mu_c, double c, Which which);

// zetaN, uniform, nu{a,b,c}[^(v)]@c, or a splice point id.
std::optional<Spectrum> resolve_named(const std::string& name);

}  // namespace qap
