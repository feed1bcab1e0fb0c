#include "qap/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "qap/error.hpp"

namespace qap {

using nlohmann::json;

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json to_json(const Spectrum& s) {
    json a = json::array();
    for (double x : s.values()) a.push_back(fmt_double(x));
    return a;
}

std::string to_csv_line(const Spectrum& s) {
    std::string out;
    for (std::size_t i = 0; i < kDim; ++i) {
        if (i) out += ',';
        out += fmt_double(s[i]);
    }
    return out;
}

json to_json(const MembershipVerdict& v) {
    return json{{"membership", to_string(v.membership)}, {"active", to_string(v.active)},
                {"l1", v.l1},                            {"l2", v.l2},
                {"min_eig_L1", v.min_eig_l1},            {"min_eig_L2", v.min_eig_l2},
                {"rank_deficient", v.rank_deficient}};
}

json to_json(const ExtremalityResult& r) {
    json basis = json::array();
    for (const auto& v : r.null_basis) basis.push_back(v);
    return json{{"verdict", to_string(r.verdict)},
                {"rank", r.rank},
                {"singular_values", r.singular_values},
                {"null_basis", basis}};
}

json to_json(const McReport& r) {
    return json{{"min_pt_eigenvalue", r.min_pt_eigenvalue},
                {"argmin_seed", r.argmin_seed},
                {"argmin_index", r.argmin_index},
                {"samples", r.samples},
                {"seed", r.seed},
                {"elapsed_seconds", r.elapsed_seconds}};
}

namespace {

void line_col(const std::string& text, std::size_t offset, int& line, int& col) {
    line = 1;
    col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
}

double parse_number(const std::string& s) {
    std::size_t used = 0;
    double x = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return x;
}

}  // namespace

Spectrum spectrum_from_json(const json& j, const SpectrumOptions& opts) {
    const json* arr = &j;
    if (j.is_object()) {
        if (!j.contains("spectrum")) throw ParseError("object has no \"spectrum\" member", 1, 1);
        arr = &j["spectrum"];
    }
    if (!arr->is_array()) throw ParseError("expected an array of 9 values", 1, 1);
    std::vector<double> v;
    for (const auto& e : *arr) {
        if (e.is_number()) {
            v.push_back(e.get<double>());
        } else if (e.is_string()) {
            try {
                v.push_back(parse_number(e.get<std::string>()));
            } catch (const std::exception&) {
                throw ParseError("not a number: \"" + e.get<std::string>() + "\"", 1, 1);
            }
        } else {
            throw ParseError("array entries must be numbers or numeric strings", 1, 1);
        }
    }
    return make_spectrum(v, opts);
}

Spectrum parse_spectrum_text(const std::string& text, const SpectrumOptions& opts) {
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw ParseError("empty input", 1, 1);

    if (text[first] == '[' || text[first] == '{') {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::parse_error& e) {
            int line, col;
            line_col(text, e.byte == 0 ? 0 : e.byte - 1, line, col);
            throw ParseError("malformed JSON", line, col);
        }
        return spectrum_from_json(j, opts);
    }

    // bare list: tokens split on commas and whitespace
    std::vector<double> v;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
        if (i >= text.size()) break;
        std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != ',') ++i;
        std::string tok = text.substr(start, i - start);
        try {
            v.push_back(parse_number(tok));
        } catch (const std::exception&) {
            int line, col;
            line_col(text, start, line, col);
            throw ParseError("not a number: \"" + tok + "\"", line, col);
        }
    }
    return make_spectrum(v, opts);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace qap
