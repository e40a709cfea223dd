#include "planner/scenario_io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace planner::cli {

using nlohmann::ordered_json;
namespace hz = planner::horizon;

std::string fnv1a_hash(const std::string& bytes) {
    std::uint64_t hash = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    char buffer[20];
    std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
    return buffer;
}

std::string format12(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

double round12(double value) {
    return std::strtod(format12(value).c_str(), nullptr);
}

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& message) {
    throw std::invalid_argument("scenario: field '" + field + "': " + message);
}

const ordered_json& require(const ordered_json& doc, const std::string& field) {
    if (!doc.contains(field))
        fail(field, "missing");
    return doc.at(field);
}

std::map<int, double> year_map(const ordered_json& node, const std::string& field) {
    std::map<int, double> out;
    if (!node.is_object())
        fail(field, "expected an object keyed by year");
    for (const auto& [key, value] : node.items()) {
        int year;
        try {
            year = std::stoi(key);
        } catch (const std::exception&) {
            fail(field, "key '" + key + "' is not a year");
        }
        if (!value.is_number())
            fail(field, "value for year " + key + " is not a number");
        out[year] = value.get<double>();
    }
    return out;
}

finance::AnnuityConvention parse_convention(const std::string& name) {
    if (name == "first_year_undiscounted")
        return finance::AnnuityConvention::FirstYearUndiscounted;
    if (name == "first_year_discounted")
        return finance::AnnuityConvention::FirstYearDiscounted;
    fail("annuity_convention", "unknown convention '" + name + "'");
}

std::string convention_name(finance::AnnuityConvention convention) {
    return convention == finance::AnnuityConvention::FirstYearUndiscounted
               ? "first_year_undiscounted"
               : "first_year_discounted";
}

model::Asset parse_asset(const ordered_json& node) {
    model::Asset asset;
    asset.name = require(node, "name").get<std::string>();
    asset.cost.lifetime = require(node, "lifetime").get<int>();
    if (node.contains("total_cost_by_year"))
        asset.cost.total_cost_by_year = year_map(node.at("total_cost_by_year"),
                                                 "total_cost_by_year");
    if (node.contains("annualized_cost_by_year"))
        asset.cost.annualized_cost_by_year =
            year_map(node.at("annualized_cost_by_year"), "annualized_cost_by_year");
    if (asset.cost.total_cost_by_year.empty() && asset.cost.annualized_cost_by_year.empty())
        fail("assets", "asset '" + asset.name +
                           "' needs total_cost_by_year or annualized_cost_by_year");
    asset.op_cost_by_year = year_map(require(node, "op_cost_by_year"), "op_cost_by_year");
    for (const auto& period_node : require(node, "rep_periods")) {
        model::RepPeriod period;
        period.id = require(period_node, "id").get<std::string>();
        period.steps = period_node.value("steps", 1);
        std::map<int, double> hours;
        if (period_node.contains("hours_by_year")) {
            hours = year_map(period_node.at("hours_by_year"), "hours_by_year");
        } else if (period_node.contains("hours")) {
            const double h = period_node.at("hours").get<double>();
            for (const auto& [year, unused] : asset.op_cost_by_year)
                hours[year] = h;
        } else {
            fail("rep_periods", "period '" + period.id + "' needs hours or hours_by_year");
        }
        for (const auto& [year, h] : hours)
            asset.rep_hours[{year, period.id}] = h;
        asset.rep_periods.push_back(std::move(period));
    }
    return asset;
}

void complete_costs(model::Scenario& scenario) {
    const auto convention = scenario.options.convention;
    for (auto& asset : scenario.assets) {
        for (int m : scenario.horizon.milestones) {
            const double wacc = scenario.financial.wacc_at(m);
            const bool has_total = asset.cost.has_total(m);
            const bool has_annualized = asset.cost.has_annualized(m);
            if (!has_total && !has_annualized)
                fail("assets", "asset '" + asset.name + "' has no cost for milestone year " +
                                   std::to_string(m));
            if (has_total) {
                const double derived = finance::annualize(asset.cost.total_cost_by_year.at(m),
                                                          wacc, asset.cost.lifetime, convention);
                if (has_annualized) {
                    const double given = asset.cost.annualized_cost_by_year.at(m);
                    if (std::abs(given - derived) > 1e-6 * std::max(1.0, std::abs(derived)))
                        fail("assets", "asset '" + asset.name + "', year " + std::to_string(m) +
                                           ": total and annualized costs are inconsistent");
                } else {
                    asset.cost.annualized_cost_by_year[m] = derived;
                }
            } else {
                const std::vector<double> annuities(
                    asset.cost.lifetime, asset.cost.annualized_cost_by_year.at(m));
                asset.cost.total_cost_by_year[m] =
                    finance::total_from_annuities(annuities, wacc, convention);
            }
        }
    }
}

}  // namespace

LoadedScenario parse_scenario(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("scenario: not valid JSON: ") + e.what());
    }

    LoadedScenario loaded;
    loaded.input_hash = fnv1a_hash(text);
    model::Scenario& scenario = loaded.scenario;

    const auto& horizon_node = require(doc, "horizon");
    scenario.horizon.total_years = require(horizon_node, "total_years").get<int>();
    for (const auto& m : require(horizon_node, "milestones"))
        scenario.horizon.milestones.push_back(m.get<int>());

    const auto& financial_node = require(doc, "financial");
    scenario.financial.social_discount_rate =
        require(financial_node, "social_discount_rate").get<double>();
    scenario.financial.wacc_by_year =
        year_map(require(financial_node, "wacc_by_year"), "wacc_by_year");

    scenario.options.convention =
        parse_convention(doc.value("annuity_convention", "first_year_undiscounted"));

    if (doc.contains("split_scheme")) {
        const auto& scheme = doc.at("split_scheme");
        const std::string type = require(scheme, "type").get<std::string>();
        if (type == "efficiency_weighted") {
            scenario.options.split_scheme.efficiency_weighted = true;
            for (const auto& [key, value] : require(scheme, "efficiency").items())
                scenario.options.split_scheme.efficiency[std::stoi(key)] =
                    rational_from_double(value.get<double>());
        } else if (type != "equal_split") {
            fail("split_scheme", "unknown type '" + type + "'");
        }
    }
    scenario.options.p2_statement_form = doc.value("p2_statement_form", false);

    for (const auto& asset_node : require(doc, "assets"))
        scenario.assets.push_back(parse_asset(asset_node));

    if (doc.contains("demand")) {
        for (const auto& [milestone_key, periods] : doc.at("demand").items()) {
            const int mu = std::stoi(milestone_key);
            for (const auto& [period_id, steps] : periods.items()) {
                if (!steps.is_array())
                    fail("demand", "expected an array of per-step values");
                int t = 0;
                for (const auto& value : steps)
                    scenario.demand[{mu, period_id, t++}] = value.get<double>();
            }
        }
    }

    if (doc.contains("methods"))
        for (const auto& name : doc.at("methods"))
            loaded.methods.push_back(model::method_from_name(name.get<std::string>()));

    complete_costs(scenario);
    scenario.validate();

    // Demand step counts must match the rep-period grid.
    for (const auto& [key, value] : scenario.demand) {
        const auto& [mu, period_id, step] = key;
        bool known = false;
        for (const auto& period : scenario.rep_grid())
            if (period.id == period_id && step < period.steps)
                known = true;
        if (!known)
            fail("demand", "entry (" + std::to_string(mu) + ", " + period_id + ", " +
                               std::to_string(step) + ") is outside the rep-period grid");
    }
    return loaded;
}

LoadedScenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::invalid_argument("scenario: cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str());
}

nlohmann::ordered_json scenario_to_json(const model::Scenario& scenario,
                                        const std::vector<model::Method>& methods) {
    ordered_json doc;
    doc["horizon"] = {{"total_years", scenario.horizon.total_years},
                      {"milestones", scenario.horizon.milestones}};
    ordered_json wacc;
    for (const auto& [year, value] : scenario.financial.wacc_by_year)
        wacc[std::to_string(year)] = round12(value);
    doc["financial"] = {{"social_discount_rate", round12(scenario.financial.social_discount_rate)},
                        {"wacc_by_year", wacc}};
    doc["annuity_convention"] = convention_name(scenario.options.convention);
    if (scenario.options.split_scheme.efficiency_weighted) {
        ordered_json efficiency;
        for (const auto& [m, value] : scenario.options.split_scheme.efficiency)
            efficiency[std::to_string(m)] = round12(to_double(value));
        doc["split_scheme"] = {{"type", "efficiency_weighted"}, {"efficiency", efficiency}};
    } else {
        doc["split_scheme"] = {{"type", "equal_split"}};
    }
    if (scenario.options.p2_statement_form)
        doc["p2_statement_form"] = true;
    doc["assets"] = ordered_json::array();
    for (const auto& asset : scenario.assets) {
        ordered_json node;
        node["name"] = asset.name;
        node["lifetime"] = asset.cost.lifetime;
        ordered_json total, annualized, op;
        for (const auto& [year, value] : asset.cost.total_cost_by_year)
            total[std::to_string(year)] = round12(value);
        for (const auto& [year, value] : asset.cost.annualized_cost_by_year)
            annualized[std::to_string(year)] = round12(value);
        for (const auto& [year, value] : asset.op_cost_by_year)
            op[std::to_string(year)] = round12(value);
        node["total_cost_by_year"] = total;
        node["annualized_cost_by_year"] = annualized;
        node["op_cost_by_year"] = op;
        node["rep_periods"] = ordered_json::array();
        for (const auto& period : asset.rep_periods) {
            ordered_json pnode;
            pnode["id"] = period.id;
            pnode["steps"] = period.steps;
            ordered_json hours;
            for (const auto& [key, value] : asset.rep_hours)
                if (key.second == period.id)
                    hours[std::to_string(key.first)] = round12(value);
            pnode["hours_by_year"] = hours;
            node["rep_periods"].push_back(pnode);
        }
        doc["assets"].push_back(node);
    }
    ordered_json demand;
    for (const auto& [key, value] : scenario.demand) {
        const auto& [mu, period_id, step] = key;
        auto& steps = demand[std::to_string(mu)][period_id];
        if (!steps.is_array())
            steps = ordered_json::array();
        while (static_cast<int>(steps.size()) <= step)
            steps.push_back(0.0);
        steps[step] = round12(value);
    }
    doc["demand"] = demand;
    if (!methods.empty()) {
        doc["methods"] = ordered_json::array();
        for (model::Method m : methods)
            doc["methods"].push_back(model::method_name(m));
    }
    return doc;
}

}  // namespace planner::cli
