#pragma once

#include "planner/formulation.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace planner::cli {

struct LoadedScenario {
    model::Scenario scenario;
    std::vector<model::Method> methods;  // empty means "all"
    std::string input_hash;              // FNV-1a of the raw document
};

/// Parse, validate, and complete a scenario document. Missing C^A values are
/// derived from C^T (and vice versa) under the declared annuity convention;
/// when both are given they must agree within 1e-6 relative.
LoadedScenario load_scenario(const std::filesystem::path& path);
LoadedScenario parse_scenario(const std::string& text);

nlohmann::ordered_json scenario_to_json(const model::Scenario& scenario,
                                        const std::vector<model::Method>& methods);

std::string fnv1a_hash(const std::string& bytes);

/// Fixed 12-significant-digit float policy for every emitted number.
double round12(double value);
std::string format12(double value);

struct RunReport {
    std::string input_hash;
    std::vector<model::Method> methods;
    model::ComparisonReport comparison;
    double coefficient_tol = 1e-9;
    double solver_feasibility_tol = 1e-7;
};

/// Build, solve, verify, and cross-compare the requested formulations.
RunReport run(const model::Scenario& scenario, const std::vector<model::Method>& methods,
              const std::string& input_hash = "");

enum class ReportFormat { Json, Csv, Table };

std::string emit_to_string(const RunReport& report, ReportFormat format);

/// Writes report.json / report.csv / report.txt into the directory.
std::filesystem::path emit(const RunReport& report, ReportFormat format,
                           const std::filesystem::path& out_dir);

}  // namespace planner::cli
