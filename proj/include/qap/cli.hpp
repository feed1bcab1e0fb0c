#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "qap/criterion.hpp"
#include "qap/families.hpp"

namespace qap {

// Exit codes for classify.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNotAP = 2;

// Output directory override for relative --out paths.
inline constexpr const char* kOutputDirEnv = "QAP_OUTPUT_DIR";

// Named constant, inline list, or path to a JSON/CSV file.
Spectrum resolve_spectrum_arg(const std::string& arg);

struct SweepRow {
    const FamilySpec* family;
    double c;
    ThreeLevel levels;
    MembershipVerdict verdict;
    std::string extremality;  // "Extreme", "NotExtreme" or "-" off the boundary
    double corner;
    double dist_lo, dist_hi;  // sup-norm distance to the two limit states
};

std::vector<SweepRow> sweep_rows(const std::vector<const FamilySpec*>& fams, int steps,
                                 const ClassifyOptions& opts = {});

const std::vector<std::string>& sweep_csv_columns();
std::string sweep_csv(const std::vector<SweepRow>& rows);
nlohmann::json sweep_json(const std::vector<SweepRow>& rows);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qap
