#include <doctest.h>

#include "planner/scenario_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace planner::cli;
using planner::model::Method;

namespace {

const std::filesystem::path kData = PLANNER_DATA_DIR;

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("bundled fixtures load and validate") {
    for (const char* name : {"annuity_example.json", "salvage_example.json", "paper_example.json"}) {
        const auto loaded = load_scenario(kData / name);
        CHECK_NOTHROW(loaded.scenario.validate());
        CHECK(loaded.input_hash.size() == 16);  // FNV-1a hex
        CHECK_FALSE(loaded.methods.empty());
    }
}

TEST_CASE("missing annualized costs are derived from the overnight cost") {
    const auto loaded = load_scenario(kData / "annuity_example.json");
    // 100 EUR, 2%, 5 years, first payment undiscounted: the 20.80 example.
    const double ca = loaded.scenario.assets[0].annualized_cost(0);
    CHECK(std::abs(ca - 20.80) < 0.01);
}

TEST_CASE("missing overnight costs are derived from the annuity") {
    const std::string text = R"({
      "horizon": {"total_years": 2, "milestones": [0, 1]},
      "financial": {"social_discount_rate": 0.02, "wacc_by_year": {"0": 0.02, "1": 0.02}},
      "assets": [{
        "name": "gen", "lifetime": 5,
        "annualized_cost_by_year": {"0": 20.7998, "1": 20.7998},
        "op_cost_by_year": {"0": 1.0, "1": 1.0},
        "rep_periods": [{"id": "k0", "steps": 1, "hours": 1.0}]
      }],
      "demand": {"0": {"k0": [1.0]}, "1": {"k0": [1.0]}}
    })";
    const auto loaded = parse_scenario(text);
    CHECK(std::abs(loaded.scenario.assets[0].total_cost(0) - 100.0) < 0.01);
}

TEST_CASE("inconsistent cost pairs are rejected") {
    const std::string text = R"({
      "horizon": {"total_years": 1, "milestones": [0]},
      "financial": {"social_discount_rate": 0.02, "wacc_by_year": {"0": 0.02}},
      "assets": [{
        "name": "gen", "lifetime": 5,
        "total_cost_by_year": {"0": 100.0},
        "annualized_cost_by_year": {"0": 50.0},
        "op_cost_by_year": {"0": 1.0},
        "rep_periods": [{"id": "k0", "steps": 1, "hours": 1.0}]
      }],
      "demand": {"0": {"k0": [1.0]}}
    })";
    CHECK_THROWS_AS(parse_scenario(text), std::invalid_argument);
}

TEST_CASE("schema errors carry usable messages") {
    CHECK_THROWS_WITH_AS(parse_scenario("{}"), doctest::Contains("horizon"),
                         std::invalid_argument);
    CHECK_THROWS_AS(parse_scenario("not json"), std::invalid_argument);
    const std::string bad_method = R"({
      "horizon": {"total_years": 1, "milestones": [0]},
      "financial": {"social_discount_rate": 0.02, "wacc_by_year": {"0": 0.02}},
      "assets": [{
        "name": "gen", "lifetime": 1,
        "total_cost_by_year": {"0": 100.0},
        "op_cost_by_year": {"0": 1.0},
        "rep_periods": [{"id": "k0", "steps": 1, "hours": 1.0}]
      }],
      "demand": {"0": {"k0": [1.0]}},
      "methods": ["no_such_method"]
    })";
    CHECK_THROWS_WITH_AS(parse_scenario(bad_method), doctest::Contains("no_such_method"),
                         std::invalid_argument);
}

TEST_CASE("empty milestone lists are rejected") {
    const std::string text = R"({
      "horizon": {"total_years": 3, "milestones": []},
      "financial": {"social_discount_rate": 0.02, "wacc_by_year": {"0": 0.02}},
      "assets": [{
        "name": "gen", "lifetime": 1,
        "total_cost_by_year": {"0": 100.0},
        "op_cost_by_year": {"0": 1.0},
        "rep_periods": [{"id": "k0", "steps": 1, "hours": 1.0}]
      }],
      "demand": {}
    })";
    CHECK_THROWS_AS(parse_scenario(text), std::invalid_argument);
}

TEST_CASE("load emit load is idempotent") {
    const auto loaded = load_scenario(kData / "paper_example.json");
    const auto emitted = scenario_to_json(loaded.scenario, loaded.methods).dump(2);
    const auto reloaded = parse_scenario(emitted);
    const auto emitted2 = scenario_to_json(reloaded.scenario, reloaded.methods).dump(2);
    CHECK(emitted == emitted2);
    CHECK(reloaded.scenario.horizon.milestones == loaded.scenario.horizon.milestones);
    CHECK(reloaded.methods == loaded.methods);
}

TEST_CASE("input hash is stable and content-sensitive") {
    const std::string text = slurp(kData / "annuity_example.json");
    CHECK(fnv1a_hash(text) == fnv1a_hash(text));
    CHECK(fnv1a_hash(text) != fnv1a_hash(text + " "));
    CHECK(fnv1a_hash("") == "cbf29ce484222325");  // FNV-1a 64-bit offset basis
}

TEST_CASE("twelve-digit float policy") {
    CHECK(format12(1.0 / 3.0) == "0.333333333333");
    CHECK(format12(100.0) == "100");
    CHECK(round12(1.0 / 3.0) == doctest::Approx(0.333333333333).epsilon(1e-14));
    // Idempotent.
    CHECK(round12(round12(123.456789)) == round12(123.456789));
}

TEST_CASE("run produces verified reports in every format") {
    const auto loaded = load_scenario(kData / "paper_example.json");
    const auto report = run(loaded.scenario, loaded.methods, loaded.input_hash);
    CHECK(report.input_hash == loaded.input_hash);
    REQUIRE(report.comparison.results.size() == loaded.methods.size());
    for (const auto& result : report.comparison.results)
        CHECK(result.status == planner::lp::Status::Optimal);

    const std::string json_text = emit_to_string(report, ReportFormat::Json);
    const auto parsed = nlohmann::json::parse(json_text);
    CHECK(parsed.contains("methods"));
    CHECK(parsed.at("provenance").at("input_hash") == loaded.input_hash);

    const std::string csv_text = emit_to_string(report, ReportFormat::Csv);
    CHECK(csv_text.rfind("method,", 0) == 0);

    const std::string table_text = emit_to_string(report, ReportFormat::Table);
    CHECK(table_text.find("p3") != std::string::npos);
}

TEST_CASE("report emission is byte-stable") {
    const auto loaded = load_scenario(kData / "paper_example.json");
    const auto a = run(loaded.scenario, loaded.methods, loaded.input_hash);
    const auto b = run(loaded.scenario, loaded.methods, loaded.input_hash);
    CHECK(emit_to_string(a, ReportFormat::Json) == emit_to_string(b, ReportFormat::Json));
    CHECK(emit_to_string(a, ReportFormat::Csv) == emit_to_string(b, ReportFormat::Csv));
}

TEST_CASE("run on a milestone horizon skips the yearly-only methods with a note") {
    const auto loaded = load_scenario(kData / "paper_example.json");
    const auto report = run(loaded.scenario, {Method::BasicTotal, Method::P2}, loaded.input_hash);
    REQUIRE(report.comparison.results.size() == 1);
    CHECK(report.comparison.results[0].method == Method::P2);
    bool noted = false;
    for (const auto& note : report.comparison.notes)
        noted = noted || note.find("basic_total") != std::string::npos;
    CHECK(noted);
}

TEST_CASE("emit writes the three report files") {
    const auto loaded = load_scenario(kData / "annuity_example.json");
    const auto report = run(loaded.scenario, loaded.methods, loaded.input_hash);
    const auto dir = std::filesystem::temp_directory_path() / "planner_io_test";
    std::filesystem::remove_all(dir);
    const auto json_path = emit(report, ReportFormat::Json, dir);
    CHECK(std::filesystem::exists(json_path));
    CHECK(json_path.filename() == "report.json");
    const auto csv_path = emit(report, ReportFormat::Csv, dir);
    CHECK(slurp(csv_path).rfind("method,", 0) == 0);
    std::filesystem::remove_all(dir);
}
