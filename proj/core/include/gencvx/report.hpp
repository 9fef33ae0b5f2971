#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gencvx/conditions.hpp"
#include "gencvx/config.hpp"
#include "gencvx/oracles.hpp"

namespace gencvx {

enum class ConsistencyStatus { Consistent, PaperContradiction, Inconclusive };
const char* consistency_status_name(ConsistencyStatus s);

// One checked implication between a condition verdict and the matching
// definition-level oracle. A contradiction (replayable condition failure on
// an oracle-consistent function, or a holding sufficient condition next to a
// definition violation) indicates an artifact bug and forces a nonzero exit.
struct ConsistencyEntry {
    std::string theorem;
    ConsistencyStatus status = ConsistencyStatus::Consistent;
    std::string detail;
};

struct LocalMinEntry {
    Vec point;
    LocalMinStatus status = LocalMinStatus::LocalMin;
};

struct AnalysisReport {
    std::string schema_version = "1";
    AnalysisConfig config;

    std::string function_name;
    int dimension = 1;
    std::vector<std::array<double, 2>> domain_box;
    double grad_lipschitz = 0.0;

    std::vector<ConditionVerdict> conditions;
    std::vector<OracleVerdict> oracles;
    std::optional<OracleVerdict> first_order_check;  // Crouzeix-style pair scan
    std::vector<LocalMinEntry> local_min;
    std::vector<CellEstimates> set_estimates;
    std::vector<ConsistencyEntry> consistency;

    long critical_points = 0;
    int exit_status = 0;
};

// Runs the full pipeline for a config: model preparation and gradient
// validation, point scan, condition checks, oracle cross-validation and the
// consistency matrix. Deterministic for a fixed seed.
AnalysisReport run_analysis(const AnalysisConfig& config);

// Renders a report; format is "json" (stable key order, round-trips) or
// "markdown".
std::string emit(const AnalysisReport& report, const std::string& format);

// Repo-stable path of the JSON schema describing the json format.
const char* report_schema_path();

} // namespace gencvx
