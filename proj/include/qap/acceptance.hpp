#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "qap/criterion.hpp"
#include "qap/extremality.hpp"

namespace qap {

struct RunConfig {
    ClassifyOptions classify{};
    ExtremalityOptions extremality{};
    std::uint64_t seed = 20240611;
    int mc_samples = 2000;
    int random_boundary = 10000;
};

// Reads det_tol, psd_tol, rank_tol, group_tol, null_tol, seed, mc_samples,
// random_boundary. Unknown keys are rejected.
RunConfig config_from_json(const nlohmann::json& j);

struct CriterionResult {
    int id;
    std::string name;
    bool pass;
    std::string detail;
    double seconds;
};

// anchors, endpoints, families, limits, decomposition, corner, oracle, witness
const std::vector<std::string>& criterion_names();

CriterionResult run_criterion(const std::string& name, const RunConfig& cfg);

// Empty selection runs everything.
std::vector<CriterionResult> run_acceptance(const RunConfig& cfg, const std::vector<std::string>& only = {});

std::string format_result(const CriterionResult& r);

}  // namespace qap
