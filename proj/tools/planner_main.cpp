#include "planner/scenario_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace planner;

int cmd_validate(const std::string& file) {
    const cli::LoadedScenario loaded = cli::load_scenario(file);
    std::cout << "ok: " << file << " (hash " << loaded.input_hash << ", "
              << loaded.scenario.assets.size() << " asset(s), Y="
              << loaded.scenario.horizon.total_years << ")\n";
    return 0;
}

int cmd_run(const std::string& file, const std::vector<std::string>& method_names,
            const std::string& out_dir, const std::string& format_name) {
    const cli::LoadedScenario loaded = cli::load_scenario(file);
    std::vector<model::Method> methods = loaded.methods;
    if (!method_names.empty()) {
        methods.clear();
        for (const auto& name : method_names)
            methods.push_back(model::method_from_name(name));
    }
    cli::ReportFormat format = cli::ReportFormat::Table;
    if (format_name == "json")
        format = cli::ReportFormat::Json;
    else if (format_name == "csv")
        format = cli::ReportFormat::Csv;
    else if (format_name != "table")
        throw std::invalid_argument("unknown format '" + format_name + "'");

    const cli::RunReport report = cli::run(loaded.scenario, methods, loaded.input_hash);
    if (out_dir.empty()) {
        std::cout << cli::emit_to_string(report, format);
    } else {
        const auto path = cli::emit(report, format, out_dir);
        std::cout << "wrote " << path.string() << "\n";
    }
    return 0;
}

int cmd_weights(const std::string& file, const std::string& out_dir) {
    const cli::LoadedScenario loaded = cli::load_scenario(file);
    const auto& scenario = loaded.scenario;
    const int lifetime = scenario.assets.front().cost.lifetime;
    const auto wi = horizon::milestone_interval_weights(scenario.horizon);
    const auto wo = horizon::linear_year_map(scenario.horizon);
    const auto wm =
        horizon::invest_op_split(scenario.horizon, lifetime, scenario.options.split_scheme);
    const auto wy = horizon::tri_weights(scenario.horizon, lifetime);
    const std::vector<std::pair<std::string, std::string>> tables = {
        {"w_invest", horizon::to_csv(wi)},
        {"w_year_map", horizon::to_csv(wo)},
        {"w_invest_op", horizon::to_csv(wm)},
        {"w_tri", horizon::to_csv(wy)},
    };
    if (out_dir.empty()) {
        for (const auto& [name, csv] : tables)
            std::cout << "# " << name << "\n" << csv;
    } else {
        std::filesystem::create_directories(out_dir);
        for (const auto& [name, csv] : tables) {
            const auto path = std::filesystem::path(out_dir) / (name + ".csv");
            std::ofstream out(path, std::ios::binary);
            if (!out)
                throw std::invalid_argument("cannot write " + path.string());
            out << csv;
            std::cout << "wrote " << path.string() << "\n";
        }
    }
    return 0;
}

int cmd_export_lp(const std::string& file, const std::string& method_name,
                  const std::string& out_file) {
    const cli::LoadedScenario loaded = cli::load_scenario(file);
    const model::Method method = model::method_from_name(method_name);
    const model::Formulation formulation = model::build(loaded.scenario, method);
    const std::string text = lp::format_lp(formulation.to_lp(loaded.scenario));
    if (out_file.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_file, std::ios::binary);
        if (!out)
            throw std::invalid_argument("cannot write " + out_file);
        out << text;
        std::cout << "wrote " << out_file << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-year investment formulation engine"};
    app.require_subcommand(1);

    std::string file, out, format = "table", method;
    std::vector<std::string> methods;

    auto* validate = app.add_subcommand("validate", "Validate a scenario file");
    validate->add_option("file", file)->required();

    auto* run = app.add_subcommand("run", "Build, solve, and compare formulations");
    run->add_option("file", file)->required();
    run->add_option("--methods", methods, "Methods to run")->delimiter(',');
    run->add_option("--out", out, "Output directory (stdout when omitted)");
    run->add_option("--format", format, "json, csv, or table");

    auto* weights = app.add_subcommand("weights", "Dump the weight tables as CSV");
    weights->add_option("file", file)->required();
    weights->add_option("--out", out, "Output directory (stdout when omitted)");

    auto* export_lp = app.add_subcommand("export-lp", "Emit one formulation in LP text form");
    export_lp->add_option("file", file)->required();
    export_lp->add_option("--method", method, "Formulation to export")->required();
    export_lp->add_option("--out", out, "Output file (stdout when omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed())
            return cmd_validate(file);
        if (run->parsed())
            return cmd_run(file, methods, out, format);
        if (weights->parsed())
            return cmd_weights(file, out);
        return cmd_export_lp(file, method, out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::runtime_error& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 2;
    }
}
