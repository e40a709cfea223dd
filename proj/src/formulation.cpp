#include "planner/formulation.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace planner::model {

namespace hz = planner::horizon;

namespace {

double map_at(const std::map<int, double>& values, int year, const char* what) {
    auto it = values.find(year);
    if (it == values.end())
        throw std::invalid_argument(std::string(what) + ": no value for year " +
                                    std::to_string(year));
    return it->second;
}

}  // namespace

double Asset::total_cost(int year) const {
    return map_at(cost.total_cost_by_year, year, "Asset total cost");
}

double Asset::annualized_cost(int year) const {
    return map_at(cost.annualized_cost_by_year, year, "Asset annualized cost");
}

double Asset::op_cost(int year) const {
    return map_at(op_cost_by_year, year, "Asset operational cost");
}

double Asset::hours(int year, const std::string& period) const {
    auto it = rep_hours.find({year, period});
    if (it == rep_hours.end())
        throw std::invalid_argument("Asset rep hours: no entry for year " + std::to_string(year) +
                                    ", period " + period);
    return it->second;
}

void Scenario::validate() const {
    horizon.validate();
    financial.validate();
    if (assets.empty())
        throw std::invalid_argument("Scenario: at least one asset is required");
    for (const auto& asset : assets) {
        asset.cost.validate();
        if (asset.rep_periods.empty())
            throw std::invalid_argument("Scenario: asset '" + asset.name +
                                        "' has no representative periods");
        for (const auto& period : asset.rep_periods)
            if (period.steps < 1)
                throw std::invalid_argument("Scenario: representative period '" + period.id +
                                            "' must have at least one step");
        for (int m : horizon.milestones) {
            financial.wacc_at(m);
            if (!asset.cost.has_total(m) || !asset.cost.has_annualized(m))
                throw std::invalid_argument("Scenario: asset '" + asset.name +
                                            "' is missing cost data for milestone year " +
                                            std::to_string(m));
            asset.op_cost(m);
            for (const auto& period : asset.rep_periods)
                asset.hours(m, period.id);
        }
        // All assets must share the (k, t) grid so demand can couple them.
        if (asset.rep_periods.size() != assets.front().rep_periods.size())
            throw std::invalid_argument("Scenario: assets disagree on representative periods");
        for (std::size_t i = 0; i < asset.rep_periods.size(); ++i) {
            if (asset.rep_periods[i].id != assets.front().rep_periods[i].id ||
                asset.rep_periods[i].steps != assets.front().rep_periods[i].steps)
                throw std::invalid_argument("Scenario: assets disagree on representative periods");
        }
    }
    for (const auto& [key, value] : demand) {
        if (value < 0.0)
            throw std::invalid_argument("Scenario: negative demand entry");
        if (!horizon.is_milestone(std::get<0>(key)))
            throw std::invalid_argument("Scenario: demand declared for non-milestone year " +
                                        std::to_string(std::get<0>(key)));
    }
}

double Scenario::demand_at(int milestone, const std::string& period, int step) const {
    auto it = demand.find({milestone, period, step});
    return it == demand.end() ? 0.0 : it->second;
}

const std::vector<RepPeriod>& Scenario::rep_grid() const {
    return assets.front().rep_periods;
}

std::string Variable::name(const Scenario& scenario) const {
    const std::string& asset_name = scenario.assets.at(asset).name;
    std::ostringstream os;
    switch (kind) {
        case Kind::Invest:
            os << "x(" << asset_name << "," << m << ")";
            break;
        case Kind::Prod:
            os << "p(" << asset_name << "," << mu << "," << period << "," << step << ")";
            break;
        case Kind::ProdVintage:
            os << "pv(" << asset_name << "," << m << "," << mu << "," << period << "," << step
               << ")";
            break;
    }
    return os.str();
}

int VariableIndex::add(const Variable& v) {
    const int column = static_cast<int>(vars.size());
    vars.push_back(v);
    lookup_[{static_cast<int>(v.kind), v.asset, v.m, v.mu, v.period, v.step}] = column;
    return column;
}

namespace {

int index_lookup(const std::map<std::tuple<int, int, int, int, std::string, int>, int>& lookup,
                 Variable::Kind kind, int asset, int m, int mu, const std::string& period,
                 int step) {
    auto it = lookup.find({static_cast<int>(kind), asset, m, mu, period, step});
    if (it == lookup.end())
        throw std::invalid_argument("VariableIndex: unknown variable");
    return it->second;
}

}  // namespace

int VariableIndex::invest(int asset, int m) const {
    return index_lookup(lookup_, Variable::Kind::Invest, asset, m, -1, "", -1);
}

int VariableIndex::prod(int asset, int mu, const std::string& period, int step) const {
    return index_lookup(lookup_, Variable::Kind::Prod, asset, -1, mu, period, step);
}

int VariableIndex::prod_vintage(int asset, int m, int mu, const std::string& period,
                                int step) const {
    return index_lookup(lookup_, Variable::Kind::ProdVintage, asset, m, mu, period, step);
}

std::string method_name(Method method) {
    switch (method) {
        case Method::BasicTotal: return "basic_total";
        case Method::BasicAnnualized: return "basic_annualized";
        case Method::StandardTotal: return "standard_total";
        case Method::StandardAnnualized: return "standard_annualized";
        case Method::P1Total: return "p1_total";
        case Method::P1Annualized: return "p1_annualized";
        case Method::P2: return "p2";
        default: return "p3";
    }
}

Method method_from_name(const std::string& name) {
    for (Method m : {Method::BasicTotal, Method::BasicAnnualized, Method::StandardTotal,
                     Method::StandardAnnualized, Method::P1Total, Method::P1Annualized, Method::P2,
                     Method::P3})
        if (method_name(m) == name)
            return m;
    throw std::invalid_argument("unknown method '" + name + "'");
}

lp::StandardLP Formulation::to_lp(const Scenario& scenario) const {
    lp::StandardLP lp;
    lp.num_vars = index.size();
    lp.objective = objective;
    lp.rows = constraints;
    lp.var_names.reserve(index.vars.size());
    for (const auto& v : index.vars)
        lp.var_names.push_back(v.name(scenario));
    return lp;
}

double Formulation::decomposition_value(const std::vector<double>& primal) const {
    double value = 0.0;
    for (const auto& term : decomposition)
        value += term.coeff * primal.at(term.column);
    return value;
}

namespace {

double social_discount(const Scenario& s, int year) {
    return finance::discount_factor(s.financial.social_discount_rate, year);
}

int lifetime_window_end(const Scenario& s, const Asset& a, int m) {
    return std::min(m + a.cost.lifetime - 1, s.horizon.last_year());
}

/// PV factor of the constant annuity over the modelled part of the lifetime.
double truncated_annuity_pv(const Scenario& s, const Asset& a, int m) {
    return finance::annuity_discount_sum(s.financial.wacc_at(m), 0,
                                         lifetime_window_end(s, a, m) - m, s.options.convention);
}

void register_invest_and_prod(const Scenario& s, Formulation& f) {
    for (int a = 0; a < static_cast<int>(s.assets.size()); ++a)
        for (int m : s.horizon.milestones)
            f.index.add({Variable::Kind::Invest, a, m, -1, "", -1});
    for (int a = 0; a < static_cast<int>(s.assets.size()); ++a)
        for (int mu : s.horizon.milestones)
            for (const auto& period : s.rep_grid())
                for (int t = 0; t < period.steps; ++t)
                    f.index.add({Variable::Kind::Prod, a, -1, mu, period.id, t});
}

void add_production_limits(const Scenario& s, Formulation& f) {
    for (int a = 0; a < static_cast<int>(s.assets.size()); ++a) {
        const Asset& asset = s.assets[a];
        for (int mu : s.horizon.milestones) {
            const auto active = hz::active_investments(s.horizon, asset.cost.lifetime, mu);
            for (const auto& period : s.rep_grid()) {
                for (int t = 0; t < period.steps; ++t) {
                    lp::Row row;
                    row.coeffs.emplace_back(f.index.prod(a, mu, period.id, t), 1.0);
                    for (int m : active)
                        row.coeffs.emplace_back(f.index.invest(a, m), -1.0);
                    row.sense = lp::Sense::LessEqual;
                    row.rhs = 0.0;
                    f.constraints.push_back(std::move(row));
                }
            }
        }
    }
}

void add_demand_cover(const Scenario& s, Formulation& f) {
    for (int mu : s.horizon.milestones) {
        for (const auto& period : s.rep_grid()) {
            for (int t = 0; t < period.steps; ++t) {
                lp::Row row;
                for (int a = 0; a < static_cast<int>(s.assets.size()); ++a)
                    row.coeffs.emplace_back(f.index.prod(a, mu, period.id, t), 1.0);
                row.sense = lp::Sense::GreaterEqual;
                row.rhs = s.demand_at(mu, period.id, t);
                f.constraints.push_back(std::move(row));
            }
        }
    }
}

void add_invest_term(Formulation& f, int column, int year, double coeff) {
    f.objective[column] += coeff;
    f.decomposition.push_back({column, CostTerm::Kind::Investment, year, coeff});
}

void add_op_term(Formulation& f, int column, int year, double coeff) {
    if (coeff == 0.0)
        return;
    f.objective[column] += coeff;
    f.decomposition.push_back({column, CostTerm::Kind::Operational, year, coeff});
}

void require_yearly(const Scenario& s, const char* builder) {
    if (!s.horizon.is_yearly())
        throw std::invalid_argument(std::string(builder) +
                                    ": horizon must model every year as a milestone");
}

Formulation start(const Scenario& s, Method method) {
    s.validate();
    Formulation f;
    f.method = method;
    register_invest_and_prod(s, f);
    f.objective.assign(f.index.size(), 0.0);
    return f;
}

void finish_milestone_constraints(const Scenario& s, Formulation& f) {
    add_production_limits(s, f);
    add_demand_cover(s, f);
}

}  // namespace

Formulation build_basic_total(const Scenario& s) {
    require_yearly(s, "build_basic_total");
    Formulation f = start(s, Method::BasicTotal);
    for (int a = 0; a < static_cast<int>(s.assets.size()); ++a) {
        const Asset& asset = s.assets[a];
        for (int y : s.horizon.milestones)
            add_invest_term(f, f.index.invest(a, y), y, social_discount(s, y) * asset.total_cost(y));
        for (int y : s.horizon.milestones)
            for (const auto& period : s.rep_grid())
                for (int t = 0; t < period.steps; ++t)
                    add_op_term(f, f.index.prod(a, y, period.id, t), y,
                                social_discount(s, y) * asset.op_cost(y) * asset.hours(y, period.id));
    }
    finish_milestone_constraints(s, f);
    return f;
}

Formulation build_basic_annualized(const Scenario& s) {
    require_yearly(s, "build_basic_annualized");
    Formulation f = start(s, Method::BasicAnnualized);
    for (int a = 0; a < static_cast<int>(s.assets.size()); ++a) {
        const Asset& asset = s.assets[a];
        for (int y : s.horizon.milestones)
            add_invest_term(f, f.index.invest(a, y), y,
                            social_discount(s, y) * asset.annualized_cost(y) *
                                truncated_annuity_pv(s, asset, y));
        for (int y : s.horizon.milestones)
            for (const auto& period : s.rep_grid())
                for (int t = 0; t < period.steps; ++t)
                    add_op_term(f, f.index.prod(a, y, period.id, t), y,
                                social_discount(s, y) * asset.op_cost(y) * asset.hours(y, period.id));
    }
    finish_milestone_constraints(s, f);
    return f;
}

Formulation apply_salvage(Formulation f, const Scenario& s) {
    if (f.method != Method::BasicTotal && f.method != Method::StandardTotal &&
        f.method != Method::P1Total)
        throw std::invalid_argument("apply_salvage: only total-cost formulations carry a salvage "
                                    "term");
    if (f.salvage_applied)
        throw std::invalid_argument("apply_salvage: salvage already applied");
    for (int column = 0; column < f.index.size(); ++column) {
        const Variable& v = f.index.vars[column];
        if (v.kind != Variable::Kind::Invest)
            continue;
        const Asset& asset = s.assets[v.asset];
        const double sv =
            finance::salvage_value(asset.annualized_cost(v.m), s.financial.wacc_at(v.m),
                                   asset.cost.lifetime, v.m, s.horizon.last_year(),
                                   s.options.convention);
        if (sv == 0.0)
            continue;
        const double credit = social_discount(s, v.m) * sv;
        f.objective[column] -= credit;
        for (auto& term : f.decomposition)
            if (term.column == column && term.kind == CostTerm::Kind::Investment)
                term.coeff -= credit;
    }
    f.salvage_applied = true;
    return f;
}

Formulation build_standard_milestone(const Scenario& s, CostMethod method) {
    Formulation f = start(s, method == CostMethod::Total ? Method::StandardTotal
                                                        : Method::StandardAnnualized);
    const hz::MilestoneWeights wi = hz::milestone_interval_weights(s.horizon);
    for (int a = 0; a < static_cast<int>(s.assets.size()); ++a) {
        const Asset& asset = s.assets[a];
        const int shift =
            s.options.convention == finance::AnnuityConvention::FirstYearDiscounted ? 1 : 0;
        for (int m : s.horizon.milestones) {
            double coeff;
            if (method == CostMethod::Total) {
                coeff = social_discount(s, m) * asset.total_cost(m);
            } else {
                // Inner sum runs over milestone years only, each carrying its
                // interval weight.
                double sum = 0.0;
                const int window_end = lifetime_window_end(s, asset, m);
                for (int j : s.horizon.milestones)
                    if (j >= m && j <= window_end)
                        sum += static_cast<double>(wi.w_invest.at(j)) *
                               finance::discount_factor(s.financial.wacc_at(m), j - m + shift);
                coeff = social_discount(s, m) * asset.annualized_cost(m) * sum;
            }
            add_invest_term(f, f.index.invest(a, m), m, coeff);
        }
        for (int m : s.horizon.milestones)
            for (const auto& period : s.rep_grid())
                for (int t = 0; t < period.steps; ++t)
                    add_op_term(f, f.index.prod(a, m, period.id, t), m,
                                social_discount(s, m) * static_cast<double>(wi.w_invest.at(m)) *
                                    asset.op_cost(m) * asset.hours(m, period.id));
    }
    finish_milestone_constraints(s, f);
    if (method == CostMethod::Total)
        f = apply_salvage(std::move(f), s);
    return f;
}

namespace {

void add_p1_operational(const Scenario& s, Formulation& f) {
    const hz::YearMapWeights wo = hz::linear_year_map(s.horizon);
    for (int a = 0; a < static_cast<int>(s.assets.size()); ++a) {
        const Asset& asset = s.assets[a];
        for (int m : s.horizon.milestones) {
            const double base = asset.op_cost(m);
            for (const auto& period : s.rep_grid()) {
                const double hours = asset.hours(m, period.id);
                for (int t = 0; t < period.steps; ++t) {
                    const int column = f.index.prod(a, m, period.id, t);
                    for (int y = 0; y < s.horizon.total_years; ++y) {
                        const Rational w = wo.at(m, y);
                        if (w == Rational(0))
                            continue;
                        add_op_term(f, column, y,
                                    social_discount(s, y) * to_double(w) * base * hours);
                    }
                }
            }
        }
    }
}

void add_p1_investment(const Scenario& s, Formulation& f) {
    for (int a = 0; a < static_cast<int>(s.assets.size()); ++a) {
        const Asset& asset = s.assets[a];
        for (int m : s.horizon.milestones)
            add_invest_term(f, f.index.invest(a, m), m,
                            social_discount(s, m) * asset.annualized_cost(m) *
                                truncated_annuity_pv(s, asset, m));
    }
}

}  // namespace

Formulation build_p1(const Scenario& s, CostMethod method) {
    Formulation f = start(s, method == CostMethod::Total ? Method::P1Total : Method::P1Annualized);
    if (method == CostMethod::Total) {
        for (int a = 0; a < static_cast<int>(s.assets.size()); ++a)
            for (int m : s.horizon.milestones)
                add_invest_term(f, f.index.invest(a, m), m,
                                social_discount(s, m) * s.assets[a].total_cost(m));
    } else {
        add_p1_investment(s, f);
    }
    add_p1_operational(s, f);
    finish_milestone_constraints(s, f);
    if (method == CostMethod::Total)
        f = apply_salvage(std::move(f), s);
    return f;
}

Formulation build_p2(const Scenario& s) {
    Formulation f = start(s, Method::P2);
    add_p1_investment(s, f);
    for (int a = 0; a < static_cast<int>(s.assets.size()); ++a) {
        const Asset& asset = s.assets[a];
        const hz::TriWeights wy = hz::tri_weights(s.horizon, asset.cost.lifetime);
        const hz::InvestOpWeights wm =
            hz::invest_op_split(s.horizon, asset.cost.lifetime, s.options.split_scheme);
        if (!s.options.p2_statement_form) {
            // Expanded form: cost data evaluated at the operational milestone.
            for (int mu : s.horizon.milestones) {
                const auto active = hz::active_investments(s.horizon, asset.cost.lifetime, mu);
                for (const auto& period : s.rep_grid()) {
                    const double base = asset.op_cost(mu) * asset.hours(mu, period.id);
                    for (int t = 0; t < period.steps; ++t) {
                        const int column = f.index.prod(a, mu, period.id, t);
                        for (int m : active) {
                            const double split = to_double(wm.at(m, mu));
                            for (int y = m; y <= lifetime_window_end(s, asset, m); ++y) {
                                const Rational w = wy.at(m, y, mu);
                                if (w == Rational(0))
                                    continue;
                                add_op_term(f, column, y,
                                            social_discount(s, y) * to_double(w) * base * split);
                            }
                        }
                    }
                }
            }
        } else {
            // Statement form: cost data evaluated at the investment milestone.
            for (int m : s.horizon.milestones) {
                for (const auto& period : s.rep_grid()) {
                    const double base = asset.op_cost(m) * asset.hours(m, period.id);
                    for (int t = 0; t < period.steps; ++t) {
                        const int column = f.index.prod(a, m, period.id, t);
                        for (int y = m; y <= lifetime_window_end(s, asset, m); ++y) {
                            for (int mu : s.horizon.milestones) {
                                const Rational w = wy.at(m, y, mu);
                                if (w == Rational(0))
                                    continue;
                                add_op_term(f, column, y,
                                            social_discount(s, y) * to_double(w) * base *
                                                to_double(wm.at(m, mu)));
                            }
                        }
                    }
                }
            }
        }
    }
    finish_milestone_constraints(s, f);
    return f;
}

Formulation build_p3(const Scenario& s) {
    s.validate();
    Formulation f;
    f.method = Method::P3;
    register_invest_and_prod(s, f);
    // Vintage variables exist only where the investment is still alive.
    for (int a = 0; a < static_cast<int>(s.assets.size()); ++a) {
        const Asset& asset = s.assets[a];
        for (int mu : s.horizon.milestones)
            for (int m : hz::active_investments(s.horizon, asset.cost.lifetime, mu))
                for (const auto& period : s.rep_grid())
                    for (int t = 0; t < period.steps; ++t)
                        f.index.add({Variable::Kind::ProdVintage, a, m, mu, period.id, t});
    }
    f.objective.assign(f.index.size(), 0.0);

    add_p1_investment(s, f);
    for (int a = 0; a < static_cast<int>(s.assets.size()); ++a) {
        const Asset& asset = s.assets[a];
        const hz::TriWeights wy = hz::tri_weights(s.horizon, asset.cost.lifetime);
        for (int mu : s.horizon.milestones) {
            const auto active = hz::active_investments(s.horizon, asset.cost.lifetime, mu);
            for (const auto& period : s.rep_grid()) {
                const double base = asset.op_cost(mu) * asset.hours(mu, period.id);
                for (int t = 0; t < period.steps; ++t) {
                    for (int m : active) {
                        const int column = f.index.prod_vintage(a, m, mu, period.id, t);
                        for (int y = m; y <= lifetime_window_end(s, asset, m); ++y) {
                            const Rational w = wy.at(m, y, mu);
                            if (w == Rational(0))
                                continue;
                            add_op_term(f, column, y,
                                        social_discount(s, y) * to_double(w) * base);
                        }
                    }
                }
            }
        }
    }

    // Vintage caps and aggregation; the demand cover stays on the aggregate.
    for (int a = 0; a < static_cast<int>(s.assets.size()); ++a) {
        const Asset& asset = s.assets[a];
        for (int mu : s.horizon.milestones) {
            const auto active = hz::active_investments(s.horizon, asset.cost.lifetime, mu);
            for (const auto& period : s.rep_grid()) {
                for (int t = 0; t < period.steps; ++t) {
                    for (int m : active) {
                        lp::Row cap;
                        cap.coeffs.emplace_back(f.index.prod_vintage(a, m, mu, period.id, t), 1.0);
                        cap.coeffs.emplace_back(f.index.invest(a, m), -1.0);
                        cap.sense = lp::Sense::LessEqual;
                        cap.rhs = 0.0;
                        f.constraints.push_back(std::move(cap));
                    }
                    lp::Row agg;
                    agg.coeffs.emplace_back(f.index.prod(a, mu, period.id, t), 1.0);
                    for (int m : active)
                        agg.coeffs.emplace_back(f.index.prod_vintage(a, m, mu, period.id, t), -1.0);
                    agg.sense = lp::Sense::Equal;
                    agg.rhs = 0.0;
                    f.constraints.push_back(std::move(agg));
                }
            }
        }
    }
    add_demand_cover(s, f);
    return f;
}

Formulation build(const Scenario& s, Method method) {
    switch (method) {
        case Method::BasicTotal: return apply_salvage(build_basic_total(s), s);
        case Method::BasicAnnualized: return build_basic_annualized(s);
        case Method::StandardTotal: return build_standard_milestone(s, CostMethod::Total);
        case Method::StandardAnnualized: return build_standard_milestone(s, CostMethod::Annualized);
        case Method::P1Total: return build_p1(s, CostMethod::Total);
        case Method::P1Annualized: return build_p1(s, CostMethod::Annualized);
        case Method::P2: return build_p2(s);
        default: return build_p3(s);
    }
}

namespace {

double rel_diff(double a, double b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

std::map<std::string, double> coefficients_by_name(const Formulation& f, const Scenario& s,
                                                   Variable::Kind kind) {
    std::map<std::string, double> out;
    for (int column = 0; column < f.index.size(); ++column)
        if (f.index.vars[column].kind == kind)
            out[f.index.vars[column].name(s)] = f.objective[column];
    return out;
}

double max_common_diff(const std::map<std::string, double>& a,
                       const std::map<std::string, double>& b) {
    double worst = 0.0;
    for (const auto& [name, coeff] : a) {
        auto it = b.find(name);
        if (it != b.end())
            worst = std::max(worst, rel_diff(coeff, it->second));
    }
    return worst;
}

}  // namespace

ComparisonReport compare(const std::vector<Formulation>& formulations, const Scenario& scenario,
                         const lp::SolverOptions& solver_options) {
    ComparisonReport report;
    if (formulations.empty())
        return report;

    // All formulations must come from the same scenario: identical investment
    // variable sets are the observable consequence.
    std::set<std::string> invest_names;
    for (const auto& v : formulations.front().index.vars)
        if (v.kind == Variable::Kind::Invest)
            invest_names.insert(v.name(scenario));
    for (const auto& f : formulations) {
        std::set<std::string> names;
        for (const auto& v : f.index.vars)
            if (v.kind == Variable::Kind::Invest)
                names.insert(v.name(scenario));
        if (names != invest_names)
            throw std::invalid_argument("compare: formulations do not share one scenario");
    }

    std::map<Method, std::size_t> by_method;
    for (std::size_t i = 0; i < formulations.size(); ++i) {
        const Formulation& f = formulations[i];
        by_method[f.method] = i;
        MethodResult result;
        result.method = f.method;
        const lp::StandardLP lp = f.to_lp(scenario);
        const lp::SolveOutcome outcome = lp::solve(lp, solver_options);
        result.status = outcome.status;
        if (outcome.status == lp::Status::Optimal) {
            result.objective = outcome.objective;
            result.primal = outcome.primal;
            for (int column = 0; column < f.index.size(); ++column)
                if (f.index.vars[column].kind == Variable::Kind::Invest)
                    result.investments[f.index.vars[column].name(scenario)] =
                        outcome.primal[column];
            for (const auto& term : f.decomposition) {
                const double value = term.coeff * outcome.primal[term.column];
                if (term.kind == CostTerm::Kind::Investment)
                    result.invest_cost_by_year[term.year] += value;
                else
                    result.op_cost_by_year[term.year] += value;
            }
        }
        report.results.push_back(std::move(result));
    }

    for (std::size_t i = 0; i < formulations.size(); ++i) {
        for (std::size_t j = i + 1; j < formulations.size(); ++j) {
            PairDiff diff;
            diff.a = formulations[i].method;
            diff.b = formulations[j].method;
            diff.max_invest_rel_diff = max_common_diff(
                coefficients_by_name(formulations[i], scenario, Variable::Kind::Invest),
                coefficients_by_name(formulations[j], scenario, Variable::Kind::Invest));
            diff.max_op_rel_diff = max_common_diff(
                coefficients_by_name(formulations[i], scenario, Variable::Kind::Prod),
                coefficients_by_name(formulations[j], scenario, Variable::Kind::Prod));
            report.coefficient_diffs.push_back(diff);
        }
    }

    const auto pair_diff = [&](Method a, Method b) -> const PairDiff* {
        for (const auto& diff : report.coefficient_diffs)
            if ((diff.a == a && diff.b == b) || (diff.a == b && diff.b == a))
                return &diff;
        return nullptr;
    };

    report.total_annualized_equivalent = true;
    for (auto [total, annualized] :
         {std::pair{Method::BasicTotal, Method::BasicAnnualized},
          std::pair{Method::StandardTotal, Method::StandardAnnualized},
          std::pair{Method::P1Total, Method::P1Annualized}}) {
        if (const PairDiff* diff = pair_diff(total, annualized)) {
            report.has_total_annualized_pair = true;
            if (diff->max_invest_rel_diff > 1e-9)
                report.total_annualized_equivalent = false;
        }
    }
    if (!report.has_total_annualized_pair)
        report.total_annualized_equivalent = false;

    if (const PairDiff* diff = pair_diff(Method::StandardAnnualized, Method::P1Annualized))
        report.standard_vs_p1_invest_diff = diff->max_invest_rel_diff;

    if (by_method.count(Method::P2) && by_method.count(Method::P3)) {
        const MethodResult& p2 = report.results[by_method.at(Method::P2)];
        const MethodResult& p3 = report.results[by_method.at(Method::P3)];
        if (p2.status == lp::Status::Optimal && p3.status == lp::Status::Optimal) {
            report.has_p2_p3_pair = true;
            report.p2_p3_objective_gap = p2.objective - p3.objective;
        }
    }

    if (by_method.count(Method::P2))
        report.notes.push_back(
            "Proposal 2 fixes the vintage split of production before the optimization; when an "
            "attributed vintage receives no investment the charged operational cost can deviate "
            "from the realized one.");

    return report;
}

}  // namespace planner::model
