#include "planner/scenario_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace planner::cli {

using nlohmann::ordered_json;

namespace {

const char* status_name(lp::Status status) {
    switch (status) {
        case lp::Status::Optimal: return "optimal";
        case lp::Status::Infeasible: return "infeasible";
        default: return "unbounded";
    }
}

// §-summary ordering: basics first, then standard, P1, P2, P3.
int method_rank(model::Method method) {
    switch (method) {
        case model::Method::BasicTotal: return 0;
        case model::Method::BasicAnnualized: return 1;
        case model::Method::StandardTotal: return 2;
        case model::Method::StandardAnnualized: return 3;
        case model::Method::P1Total: return 4;
        case model::Method::P1Annualized: return 5;
        case model::Method::P2: return 6;
        default: return 7;
    }
}

}  // namespace

RunReport run(const model::Scenario& scenario, const std::vector<model::Method>& methods,
              const std::string& input_hash) {
    std::vector<model::Method> ordered = methods;
    if (ordered.empty())
        ordered = {model::Method::BasicTotal,      model::Method::BasicAnnualized,
                   model::Method::StandardTotal,   model::Method::StandardAnnualized,
                   model::Method::P1Total,         model::Method::P1Annualized,
                   model::Method::P2,              model::Method::P3};
    std::sort(ordered.begin(), ordered.end(),
              [](model::Method a, model::Method b) { return method_rank(a) < method_rank(b); });
    ordered.erase(std::unique(ordered.begin(), ordered.end()), ordered.end());

    // Yearly-only methods cannot run on a milestone horizon; drop them with a note
    // rather than failing the whole run.
    RunReport report;
    report.input_hash = input_hash;
    std::vector<model::Formulation> formulations;
    for (model::Method method : ordered) {
        if ((method == model::Method::BasicTotal || method == model::Method::BasicAnnualized) &&
            !scenario.horizon.is_yearly()) {
            report.comparison.notes.push_back("method " + model::method_name(method) +
                                              " skipped: horizon is not yearly");
            continue;
        }
        try {
            formulations.push_back(model::build(scenario, method));
            report.methods.push_back(method);
        } catch (const std::runtime_error& e) {
            throw std::runtime_error("method " + model::method_name(method) + ": " + e.what());
        }
    }

    model::ComparisonReport comparison;
    try {
        comparison = model::compare(formulations, scenario);
    } catch (const std::runtime_error& e) {
        throw std::runtime_error("solve failed: " + std::string(e.what()));
    }
    comparison.notes.insert(comparison.notes.begin(), report.comparison.notes.begin(),
                            report.comparison.notes.end());
    report.comparison = std::move(comparison);

    // Independent check of every optimal outcome.
    for (std::size_t i = 0; i < formulations.size(); ++i) {
        const auto& result = report.comparison.results[i];
        if (result.status != lp::Status::Optimal)
            continue;
        lp::SolveOutcome outcome;
        outcome.status = result.status;
        outcome.primal = result.primal;
        outcome.objective = result.objective;
        const auto violations =
            lp::verify(formulations[i].to_lp(scenario), outcome, report.solver_feasibility_tol);
        if (!violations.empty())
            throw std::runtime_error("method " + model::method_name(result.method) +
                                     ": solution failed verification: " + violations.front().what);
    }
    return report;
}

namespace {

ordered_json report_json(const RunReport& report) {
    ordered_json doc;
    doc["provenance"] = {{"input_hash", report.input_hash},
                         {"coefficient_tol", report.coefficient_tol},
                         {"solver_feasibility_tol", report.solver_feasibility_tol},
                         {"float_format", "%.12g"}};
    doc["methods"] = ordered_json::array();
    for (const auto& result : report.comparison.results) {
        ordered_json node;
        node["method"] = model::method_name(result.method);
        node["status"] = status_name(result.status);
        if (result.status == lp::Status::Optimal) {
            node["objective"] = round12(result.objective);
            ordered_json investments;
            for (const auto& [name, value] : result.investments)
                investments[name] = round12(value);
            node["investments"] = investments;
            ordered_json invest_cost, op_cost;
            for (const auto& [year, value] : result.invest_cost_by_year)
                invest_cost[std::to_string(year)] = round12(value);
            for (const auto& [year, value] : result.op_cost_by_year)
                op_cost[std::to_string(year)] = round12(value);
            node["invest_cost_by_year"] = invest_cost;
            node["op_cost_by_year"] = op_cost;
        }
        doc["methods"].push_back(node);
    }
    doc["comparison"] = ordered_json::object();
    doc["comparison"]["pairs"] = ordered_json::array();
    for (const auto& diff : report.comparison.coefficient_diffs) {
        doc["comparison"]["pairs"].push_back(
            {{"a", model::method_name(diff.a)},
             {"b", model::method_name(diff.b)},
             {"max_invest_rel_diff", round12(diff.max_invest_rel_diff)},
             {"max_op_rel_diff", round12(diff.max_op_rel_diff)}});
    }
    doc["comparison"]["total_annualized_equivalent"] =
        report.comparison.has_total_annualized_pair
            ? ordered_json(report.comparison.total_annualized_equivalent)
            : ordered_json(nullptr);
    doc["comparison"]["standard_vs_p1_invest_diff"] =
        round12(report.comparison.standard_vs_p1_invest_diff);
    doc["comparison"]["p2_p3_objective_gap"] =
        report.comparison.has_p2_p3_pair ? ordered_json(round12(report.comparison.p2_p3_objective_gap))
                                         : ordered_json(nullptr);
    doc["comparison"]["notes"] = report.comparison.notes;
    return doc;
}

std::string report_csv(const RunReport& report) {
    std::ostringstream os;
    os << "method,term,year,value\n";
    for (const auto& result : report.comparison.results) {
        const std::string name = model::method_name(result.method);
        os << name << ",status,," << status_name(result.status) << "\n";
        if (result.status != lp::Status::Optimal)
            continue;
        os << name << ",objective,," << format12(result.objective) << "\n";
        for (const auto& [year, value] : result.invest_cost_by_year)
            os << name << ",investment," << year << "," << format12(value) << "\n";
        for (const auto& [year, value] : result.op_cost_by_year)
            os << name << ",operational," << year << "," << format12(value) << "\n";
    }
    return os.str();
}

std::string report_table(const RunReport& report) {
    std::ostringstream os;
    os << "method               status      objective      investment     operational\n";
    os << "-------------------- ----------- -------------- -------------- --------------\n";
    for (const auto& result : report.comparison.results) {
        double invest_total = 0.0, op_total = 0.0;
        for (const auto& [year, value] : result.invest_cost_by_year)
            invest_total += value;
        for (const auto& [year, value] : result.op_cost_by_year)
            op_total += value;
        char line[160];
        if (result.status == lp::Status::Optimal) {
            std::snprintf(line, sizeof(line), "%-20s %-11s %-14s %-14s %-14s\n",
                          model::method_name(result.method).c_str(), status_name(result.status),
                          format12(result.objective).c_str(), format12(invest_total).c_str(),
                          format12(op_total).c_str());
        } else {
            std::snprintf(line, sizeof(line), "%-20s %-11s %-14s %-14s %-14s\n",
                          model::method_name(result.method).c_str(), status_name(result.status),
                          "-", "-", "-");
        }
        os << line;
    }
    if (!report.comparison.notes.empty()) {
        os << "\nnotes:\n";
        for (const auto& note : report.comparison.notes)
            os << "  - " << note << "\n";
    }
    os << "\ninput hash: " << report.input_hash << "\n";
    return os.str();
}

}  // namespace

std::string emit_to_string(const RunReport& report, ReportFormat format) {
    switch (format) {
        case ReportFormat::Json: return report_json(report).dump(2) + "\n";
        case ReportFormat::Csv: return report_csv(report);
        default: return report_table(report);
    }
}

std::filesystem::path emit(const RunReport& report, ReportFormat format,
                           const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    const char* name = format == ReportFormat::Json   ? "report.json"
                       : format == ReportFormat::Csv ? "report.csv"
                                                     : "report.txt";
    const std::filesystem::path path = out_dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::invalid_argument("emit: cannot write " + path.string());
    out << emit_to_string(report, format);
    if (!out)
        throw std::invalid_argument("emit: write failed for " + path.string());
    return path;
}

}  // namespace planner::cli
