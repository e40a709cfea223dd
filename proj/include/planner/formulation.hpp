#pragma once

#include "planner/finance.hpp"
#include "planner/horizon.hpp"
#include "planner/lp.hpp"

#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace planner::model {

struct RepPeriod {
    std::string id;
    int steps = 1;
};

struct Asset {
    std::string name;
    finance::CostProfile cost;
    std::map<int, double> op_cost_by_year;            // C^op, currency/MWh
    std::vector<RepPeriod> rep_periods;
    std::map<std::pair<int, std::string>, double> rep_hours;  // (year, period) -> hours

    double total_cost(int year) const;
    double annualized_cost(int year) const;
    double op_cost(int year) const;
    double hours(int year, const std::string& period) const;
};

struct MethodOptions {
    finance::AnnuityConvention convention = finance::AnnuityConvention::FirstYearUndiscounted;
    planner::horizon::SplitScheme split_scheme;
    // Objective for Proposal 2 follows the worked expansion (costs evaluated at
    // the operational milestone). The statement form indexes costs at the
    // investment milestone instead and is kept for side-by-side study.
    bool p2_statement_form = false;
};

struct Scenario {
    planner::horizon::Horizon horizon;
    finance::FinancialSpec financial;
    std::vector<Asset> assets;
    std::map<std::tuple<int, std::string, int>, double> demand;  // (mu, period, step) -> MW
    MethodOptions options;

    void validate() const;
    double demand_at(int milestone, const std::string& period, int step) const;
    const std::vector<RepPeriod>& rep_grid() const;  // shared (k, t) grid
};

struct Variable {
    enum class Kind { Invest, Prod, ProdVintage };
    Kind kind = Kind::Invest;
    int asset = 0;
    int m = -1;        // investment milestone (Invest, ProdVintage)
    int mu = -1;       // operational milestone (Prod, ProdVintage)
    std::string period;
    int step = -1;

    std::string name(const Scenario& scenario) const;
};

struct VariableIndex {
    std::vector<Variable> vars;

    int add(const Variable& v);
    int size() const { return static_cast<int>(vars.size()); }
    int invest(int asset, int m) const;
    int prod(int asset, int mu, const std::string& period, int step) const;
    int prod_vintage(int asset, int m, int mu, const std::string& period, int step) const;

  private:
    std::map<std::tuple<int, int, int, int, std::string, int>, int> lookup_;
};

enum class Method {
    BasicTotal,
    BasicAnnualized,
    StandardTotal,
    StandardAnnualized,
    P1Total,
    P1Annualized,
    P2,
    P3,
};

enum class CostMethod { Total, Annualized };

std::string method_name(Method method);
Method method_from_name(const std::string& name);

struct CostTerm {
    enum class Kind { Investment, Operational };
    int column = 0;
    Kind kind = Kind::Investment;
    int year = 0;      // discounting year the term is booked at
    double coeff = 0.0;
};

struct Formulation {
    Method method = Method::BasicTotal;
    VariableIndex index;
    std::vector<double> objective;
    std::vector<lp::Row> constraints;
    std::vector<CostTerm> decomposition;
    bool salvage_applied = false;

    lp::StandardLP to_lp(const Scenario& scenario) const;
    /// Objective value recomputed from the labeled decomposition terms.
    double decomposition_value(const std::vector<double>& primal) const;
};

/// Yearly formulations; both require every year to be a milestone.
Formulation build_basic_total(const Scenario& scenario);
Formulation build_basic_annualized(const Scenario& scenario);

/// Subtracts the discounted salvage value from every investment coefficient of
/// a total-cost formulation. Rejects annualized inputs and double application.
Formulation apply_salvage(Formulation formulation, const Scenario& scenario);

Formulation build_standard_milestone(const Scenario& scenario, CostMethod method);
Formulation build_p1(const Scenario& scenario, CostMethod method);
Formulation build_p2(const Scenario& scenario);
Formulation build_p3(const Scenario& scenario);

/// Dispatch by method tag; total-cost methods come back with salvage applied.
Formulation build(const Scenario& scenario, Method method);

struct MethodResult {
    Method method = Method::BasicTotal;
    lp::Status status = lp::Status::Infeasible;
    double objective = 0.0;
    std::vector<double> primal;
    std::map<std::string, double> investments;        // invest variable name -> MW
    std::map<int, double> invest_cost_by_year;
    std::map<int, double> op_cost_by_year;
};

struct PairDiff {
    Method a = Method::BasicTotal;
    Method b = Method::BasicTotal;
    double max_invest_rel_diff = 0.0;
    double max_op_rel_diff = 0.0;
};

struct ComparisonReport {
    std::vector<MethodResult> results;
    std::vector<PairDiff> coefficient_diffs;
    bool has_total_annualized_pair = false;
    bool total_annualized_equivalent = false;    // within 1e-9 on investment coefficients
    double standard_vs_p1_invest_diff = 0.0;     // max relative investment coefficient diff
    bool has_p2_p3_pair = false;
    double p2_p3_objective_gap = 0.0;            // objective(P2) - objective(P3)
    std::vector<std::string> notes;
};

ComparisonReport compare(const std::vector<Formulation>& formulations, const Scenario& scenario,
                         const lp::SolverOptions& solver_options = {});

}  // namespace planner::model
