#pragma once

#include <string>

#include <json.hpp>

#include "qap/criterion.hpp"
#include "qap/extremality.hpp"
#include "qap/families.hpp"
#include "qap/oracle.hpp"
#include "qap/spectrum.hpp"

namespace qap {

// 17 significant digits, enough to round-trip a double.
std::string fmt_double(double x);

nlohmann::json to_json(const Spectrum& s);          // array of 9 decimal strings
std::string to_csv_line(const Spectrum& s);         // 9 comma-separated values
nlohmann::json to_json(const MembershipVerdict& v);
nlohmann::json to_json(const ExtremalityResult& r);
nlohmann::json to_json(const McReport& r);

// Accepts a JSON array of 9 numbers or numeric strings, an object with a
// "spectrum" member holding such an array, or bare comma/space separated values.
// Errors are ParseError with 1-based line and column.
Spectrum parse_spectrum_text(const std::string& text, const SpectrumOptions& opts = {});
Spectrum spectrum_from_json(const nlohmann::json& j, const SpectrumOptions& opts = {});

std::string read_file(const std::string& path);

}  // namespace qap
