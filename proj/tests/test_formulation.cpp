#include <doctest.h>

#include "planner/formulation.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <set>

using namespace planner::model;
using planner::finance::AnnuityConvention;
using planner::finance::annualize;
using planner::finance::salvage_value;
using planner::finance::salvage_percentage;

namespace {

// One asset, one single-step period with 1 h weight, flat demand.
Scenario yearly_scenario(int years, double r, double wacc, int lifetime, double total_cost,
                         double op_cost, double demand) {
    Scenario s;
    s.horizon.total_years = years;
    for (int y = 0; y < years; ++y)
        s.horizon.milestones.push_back(y);
    s.financial.social_discount_rate = r;
    Asset a;
    a.name = "gen";
    a.cost.lifetime = lifetime;
    for (int y = 0; y < years; ++y) {
        s.financial.wacc_by_year[y] = wacc;
        a.cost.total_cost_by_year[y] = total_cost;
        a.cost.annualized_cost_by_year[y] =
            annualize(total_cost, wacc, lifetime, AnnuityConvention::FirstYearUndiscounted);
        a.op_cost_by_year[y] = op_cost;
        a.rep_hours[{y, "k0"}] = 1.0;
        s.demand[{y, "k0", 0}] = demand;
    }
    a.rep_periods = {{"k0", 1}};
    s.assets.push_back(std::move(a));
    return s;
}

// The 6-year desk scenario with milestones {0, 2, 5} and two periods.
Scenario desk_scenario(int lifetime) {
    Scenario s;
    s.horizon.total_years = 6;
    s.horizon.milestones = {0, 2, 5};
    s.financial.social_discount_rate = 0.02;
    Asset a;
    a.name = "gen";
    a.cost.lifetime = lifetime;
    for (int y = 0; y < 6; ++y) {
        s.financial.wacc_by_year[y] = 0.02;
        a.cost.total_cost_by_year[y] = 100.0;
        a.cost.annualized_cost_by_year[y] =
            annualize(100.0, 0.02, lifetime, AnnuityConvention::FirstYearUndiscounted);
        a.op_cost_by_year[y] = 5.0;
        a.rep_hours[{y, "k0"}] = 3.0;
        a.rep_hours[{y, "k1"}] = 2.0;
    }
    a.rep_periods = {{"k0", 2}, {"k1", 1}};
    s.assets.push_back(std::move(a));
    s.demand[{0, "k0", 0}] = 8.0;
    s.demand[{0, "k0", 1}] = 6.0;
    s.demand[{0, "k1", 0}] = 5.0;
    s.demand[{2, "k0", 0}] = 16.0;
    s.demand[{2, "k0", 1}] = 12.0;
    s.demand[{2, "k1", 0}] = 10.0;
    s.demand[{5, "k0", 0}] = 24.0;
    s.demand[{5, "k0", 1}] = 18.0;
    s.demand[{5, "k1", 0}] = 15.0;
    return s;
}

double invest_coeff(const Formulation& f, int m) { return f.objective[f.index.invest(0, m)]; }

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

}  // namespace

TEST_CASE("basic total books the overnight cost at the build year") {
    // LT short enough that no lifetime spills past the horizon: salvage-free.
    const Scenario s = yearly_scenario(6, 0.03, 0.05, 3, 100.0, 2.0, 10.0);
    const Formulation f = build_basic_total(s);
    CHECK(invest_coeff(f, 0) == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(invest_coeff(f, 2) == doctest::Approx(100.0 / std::pow(1.03, 2)).epsilon(1e-12));
    // Operational coefficient of p_{ykt}: discounted op cost times hours.
    const int p2 = f.index.prod(0, 2, "k0", 0);
    CHECK(f.objective[p2] == doctest::Approx(2.0 * 1.0 / std::pow(1.03, 2)).epsilon(1e-12));
}

TEST_CASE("basic annualized spreads payments over the modelled lifetime") {
    const Scenario s = yearly_scenario(5, 0.02, 0.02, 5, 100.0, 1.0, 10.0);
    const Formulation f = build_basic_annualized(s);
    const double ca = annualize(100.0, 0.02, 5, AnnuityConvention::FirstYearUndiscounted);
    double expected = 0.0;
    for (int j = 0; j <= 4; ++j)
        expected += ca * std::pow(1.02, -j);
    CHECK(invest_coeff(f, 0) == doctest::Approx(expected).epsilon(1e-12));
    // Full-lifetime PV of the annuity at matching rates equals the overnight cost.
    CHECK(invest_coeff(f, 0) == doctest::Approx(100.0).epsilon(1e-9));
}

TEST_CASE("one-year lifetime collapses annualized to total") {
    const Scenario s = yearly_scenario(4, 0.07, 0.04, 1, 80.0, 1.0, 5.0);
    const Formulation ft = build_basic_total(s);
    const Formulation fa = build_basic_annualized(s);
    for (int y = 0; y < 4; ++y) {
        const double ca = s.assets[0].annualized_cost(y);
        CHECK(ca == doctest::Approx(80.0).epsilon(1e-12));  // single undiscounted payment
        CHECK(invest_coeff(fa, y) == doctest::Approx(std::pow(1.07, -y) * ca).epsilon(1e-12));
        CHECK(invest_coeff(ft, y) == doctest::Approx(std::pow(1.07, -y) * 80.0).epsilon(1e-12));
    }
}

TEST_CASE("salvage reduces the coefficient by the discounted credit") {
    // §4.1.1 shape: 5 modelled years, 8-year asset at 5%.
    const Scenario s = yearly_scenario(5, 0.05, 0.05, 8, 100.0, 2.0, 10.0);
    const Formulation raw = build_basic_total(s);
    const Formulation f = apply_salvage(raw, s);
    CHECK(f.salvage_applied);
    CHECK(std::abs(invest_coeff(f, 0) - 66.99) < 0.02);
    // Eq (10a) vs (10b): C^T - SV vs C^T(1 - SVP), identical to 1e-12.
    const double ca = s.assets[0].annualized_cost(0);
    for (int y = 0; y < 5; ++y) {
        const double sv = salvage_value(ca, 0.05, 8, y, 4);
        const double a10 = (100.0 - sv) * std::pow(1.05, -y);
        const double b10 = 100.0 * (1.0 - salvage_percentage(sv, 100.0)) * std::pow(1.05, -y);
        CHECK(std::abs(a10 - b10) < 1e-12 * 100.0);
        CHECK(invest_coeff(f, y) == doctest::Approx(a10).epsilon(1e-12));
    }
}

TEST_CASE("salvage is a no-op when lifetimes end inside the horizon") {
    const Scenario s = yearly_scenario(6, 0.03, 0.05, 3, 100.0, 2.0, 10.0);
    const Formulation raw = build_basic_total(s);
    const Formulation f = apply_salvage(raw, s);
    for (int y = 0; y <= 3; ++y)  // y + 3 - 1 <= 5
        CHECK(invest_coeff(f, y) == doctest::Approx(invest_coeff(raw, y)).epsilon(1e-15));
    CHECK(invest_coeff(f, 4) < invest_coeff(raw, 4));
}

TEST_CASE("salvage rejects annualized input and double application") {
    const Scenario s = yearly_scenario(5, 0.05, 0.05, 8, 100.0, 2.0, 10.0);
    CHECK_THROWS_AS(apply_salvage(build_basic_annualized(s), s), std::invalid_argument);
    const Formulation once = apply_salvage(build_basic_total(s), s);
    CHECK_THROWS_AS(apply_salvage(once, s), std::invalid_argument);
}

TEST_CASE("basic builders require a yearly horizon") {
    const Scenario s = desk_scenario(5);
    CHECK_THROWS_AS(build_basic_total(s), std::invalid_argument);
    CHECK_THROWS_AS(build_basic_annualized(s), std::invalid_argument);
}

TEST_CASE("standard annualized weights milestone payments by interval length") {
    // M={0,2,5}, LT=6: x_0 pays at the three milestones with weights 2, 3, 1.
    const Scenario s = desk_scenario(6);
    const Formulation f = build_standard_milestone(s, CostMethod::Annualized);
    const double ca = s.assets[0].annualized_cost(0);
    const double expected =
        ca * (2.0 + 3.0 / std::pow(1.02, 2) + 1.0 / std::pow(1.02, 5));
    CHECK(invest_coeff(f, 0) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("standard total carries salvage at the milestone") {
    const Scenario s = desk_scenario(6);
    const Formulation f = build_standard_milestone(s, CostMethod::Total);
    CHECK(f.salvage_applied);
    const double ca = s.assets[0].annualized_cost(2);
    const double sv2 = salvage_value(ca, 0.02, 6, 2, 5);
    CHECK(invest_coeff(f, 2) ==
          doctest::Approx((100.0 - sv2) / std::pow(1.02, 2)).epsilon(1e-12));
}

TEST_CASE("standard operational cost scales with the interval weight") {
    const Scenario s = desk_scenario(6);
    for (auto method : {CostMethod::Total, CostMethod::Annualized}) {
        const Formulation f = build_standard_milestone(s, method);
        const int p = f.index.prod(0, 2, "k0", 0);
        // Milestone 2 stands in for 3 years; 5 EUR/MWh at 3 h.
        CHECK(f.objective[p] ==
              doctest::Approx(3.0 * 5.0 * 3.0 / std::pow(1.02, 2)).epsilon(1e-12));
    }
}

TEST_CASE("p1 annualized recovers the overnight cost inside the horizon") {
    // LT=5 with M={0,2,5}: every window m + 4 fits for m=0; the olive identity
    // x_m coefficient * (1+R)^m = C_m^T holds whenever m+LT-1 <= Y-1.
    const Scenario s = desk_scenario(5);
    const Formulation f = build_p1(s, CostMethod::Annualized);
    CHECK(invest_coeff(f, 0) == doctest::Approx(100.0).epsilon(1e-9));
    // m=0 is the only milestone with a fully modelled lifetime here; check the
    // truncated form for the others against the direct sum.
    for (int m : {2, 5}) {
        const double ca = s.assets[0].annualized_cost(m);
        double pv = 0.0;
        for (int y = m; y <= std::min(m + 4, 5); ++y)
            pv += ca * std::pow(1.02, -(y - m));
        CHECK(invest_coeff(f, m) == doctest::Approx(std::pow(1.02, -m) * pv).epsilon(1e-12));
    }
}

TEST_CASE("p1 total equals p1 annualized investment coefficients") {
    const Scenario s = desk_scenario(5);
    const Formulation ft = build_p1(s, CostMethod::Total);
    const Formulation fa = build_p1(s, CostMethod::Annualized);
    for (int m : {0, 2, 5})
        CHECK(invest_coeff(ft, m) == doctest::Approx(invest_coeff(fa, m)).epsilon(1e-9));
}

TEST_CASE("p1 operational cost follows the linear year map") {
    const Scenario s = desk_scenario(5);
    const Formulation f = build_p1(s, CostMethod::Annualized);
    // p_{0,k0,t}: full year 0 plus half of year 1 discounted one year; 5 EUR/MWh, 3 h.
    const int p = f.index.prod(0, 0, "k0", 0);
    CHECK(f.objective[p] ==
          doctest::Approx(5.0 * 3.0 * (1.0 + 0.5 / 1.02)).epsilon(1e-12));
}

TEST_CASE("p1 collapses to the basic formulation on a yearly horizon") {
    const Scenario s = yearly_scenario(6, 0.03, 0.05, 4, 100.0, 2.0, 10.0);
    const Formulation p1 = build_p1(s, CostMethod::Annualized);
    const Formulation basic = build_basic_annualized(s);
    for (int y = 0; y < 6; ++y)
        CHECK(invest_coeff(p1, y) == doctest::Approx(invest_coeff(basic, y)).epsilon(1e-12));
    for (int y = 0; y < 6; ++y) {
        const int a = p1.index.prod(0, y, "k0", 0);
        const int b = basic.index.prod(0, y, "k0", 0);
        CHECK(p1.objective[a] == doctest::Approx(basic.objective[b]).epsilon(1e-12));
    }
}

TEST_CASE("p2 production weight carries the vintage split") {
    const Scenario s = desk_scenario(5);
    const Formulation f = build_p2(s);
    // p_{2,k0,t}: contributions from vintages 0 and 2, each with split 1/2.
    // The (m=0, y=1, mu=2) term contributes (1/2 year map)(1/2 split)/(1+R).
    const int p = f.index.prod(0, 2, "k0", 0);
    double expected = 0.0;
    // m=0: W^Y(0,y,2) = 1/2 at y=1, 1 at y=2..4 (mass shifted off milestone 5).
    expected += 0.5 * (0.5 / 1.02 + 1.0 / std::pow(1.02, 2) + 1.0 / std::pow(1.02, 3) +
                       1.0 / std::pow(1.02, 4));
    // m=2: W^Y(2,y,2) = 1 at y=2, 2/3 at y=3, 1/3 at y=4.
    expected += 0.5 * (1.0 / std::pow(1.02, 2) + (2.0 / 3.0) / std::pow(1.02, 3) +
                       (1.0 / 3.0) / std::pow(1.02, 4));
    expected *= 5.0 * 3.0;  // C_2^op * hours
    CHECK(f.objective[p] == doctest::Approx(expected).epsilon(1e-12));

    // p_{5,k1,t}: vintages 2 and 5 each contribute with split 1/2; vintage 2
    // also channels parts of years 3 and 4 onto milestone 5.
    const int p5 = f.index.prod(0, 5, "k1", 0);
    const double from_2 = 0.5 * ((1.0 / 3.0) / std::pow(1.02, 3) +
                                 (2.0 / 3.0) / std::pow(1.02, 4) + 1.0 / std::pow(1.02, 5));
    const double from_5 = 0.5 / std::pow(1.02, 5);
    CHECK(f.objective[p5] == doctest::Approx(5.0 * 2.0 * (from_2 + from_5)).epsilon(1e-12));
}

TEST_CASE("p2 equals p1 with a single milestone covering the horizon") {
    Scenario s = yearly_scenario(4, 0.05, 0.08, 6, 100.0, 3.0, 10.0);
    s.horizon.milestones = {0};
    s.demand = {{{0, "k0", 0}, 10.0}};
    const Formulation p2 = build_p2(s);
    const Formulation p1 = build_p1(s, CostMethod::Annualized);
    CHECK(invest_coeff(p2, 0) == doctest::Approx(invest_coeff(p1, 0)).epsilon(1e-12));
    const int a = p2.index.prod(0, 0, "k0", 0);
    const int b = p1.index.prod(0, 0, "k0", 0);
    CHECK(p2.objective[a] == doctest::Approx(p1.objective[b]).epsilon(1e-12));
}

TEST_CASE("p2 statement form indexes costs at the investment milestone") {
    Scenario s = desk_scenario(5);
    // Make the op cost year-dependent so the two index conventions differ.
    for (int y = 0; y < 6; ++y)
        s.assets[0].op_cost_by_year[y] = 5.0 + y;
    const Formulation expansion = build_p2(s);
    s.options.p2_statement_form = true;
    const Formulation statement = build_p2(s);
    const int pe = expansion.index.prod(0, 2, "k0", 0);
    const int ps = statement.index.prod(0, 2, "k0", 0);
    CHECK(expansion.objective[pe] != doctest::Approx(statement.objective[ps]));
    // With a single milestone there is only one vintage and the forms coincide.
    Scenario single = yearly_scenario(4, 0.05, 0.08, 6, 100.0, 3.0, 10.0);
    single.horizon.milestones = {0};
    single.demand = {{{0, "k0", 0}, 10.0}};
    Scenario single_statement = single;
    single_statement.options.p2_statement_form = true;
    const Formulation fe = build_p2(single);
    const Formulation fs = build_p2(single_statement);
    const int qe = fe.index.prod(0, 0, "k0", 0);
    const int qs = fs.index.prod(0, 0, "k0", 0);
    CHECK(fe.objective[qe] == doctest::Approx(fs.objective[qs]).epsilon(1e-12));
}

TEST_CASE("p3 creates exactly the reachable vintage variables") {
    const Scenario s = desk_scenario(5);
    const Formulation f = build_p3(s);
    std::set<std::pair<int, int>> vintages;
    for (const auto& v : f.index.vars)
        if (v.kind == Variable::Kind::ProdVintage)
            vintages.insert({v.m, v.mu});
    const std::set<std::pair<int, int>> expected = {{0, 0}, {0, 2}, {2, 2}, {2, 5}, {5, 5}};
    CHECK(vintages == expected);
}

TEST_CASE("p3 vintage coefficient carries the tri-weight discount sum") {
    const Scenario s = desk_scenario(5);
    const Formulation f = build_p3(s);
    // p_{2,5,k0,t}: W^Y(2,3,5)=1/3, W^Y(2,4,5)=2/3, W^Y(2,5,5)=1.
    const int col = f.index.prod_vintage(0, 2, 5, "k0", 0);
    const double expected =
        5.0 * 3.0 * ((1.0 / 3.0) / std::pow(1.02, 3) + (2.0 / 3.0) / std::pow(1.02, 4) +
                     1.0 / std::pow(1.02, 5));
    CHECK(f.objective[col] == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("p3 constraint structure follows the vintage split") {
    const Scenario s = desk_scenario(5);
    const Formulation f = build_p3(s);
    int caps = 0;
    int aggregations = 0;
    for (const auto& row : f.constraints) {
        if (row.sense == planner::lp::Sense::LessEqual) {
            // p_{m mu k t} - x_m <= 0: one +1 on a vintage column, one -1 on x.
            REQUIRE(row.coeffs.size() == 2);
            CHECK(row.rhs == 0.0);
            ++caps;
        } else if (row.sense == planner::lp::Sense::Equal) {
            // p_{mu k t} - sum_m p_{m mu k t} = 0: one aggregate +1, vintages -1.
            int aggregate_cols = 0;
            for (const auto& [col, v] : row.coeffs) {
                const auto kind = f.index.vars[col].kind;
                CHECK(kind != Variable::Kind::Invest);
                if (kind == Variable::Kind::Prod) {
                    CHECK(v == 1.0);
                    ++aggregate_cols;
                } else {
                    CHECK(v == -1.0);
                }
            }
            CHECK(aggregate_cols == 1);
            CHECK(row.rhs == 0.0);
            ++aggregations;
        }
    }
    // 5 vintage pairs x 3 (k,t) slots; 3 milestones x 3 slots aggregation rows.
    CHECK(caps == 15);
    CHECK(aggregations == 9);
}

TEST_CASE("p3 at the fixed split reproduces the p2 objective") {
    const Scenario s = desk_scenario(5);
    const Formulation p2 = build_p2(s);
    const Formulation p3 = build_p3(s);
    const auto wm = planner::horizon::invest_op_split(s.horizon, 5, s.options.split_scheme);
    std::mt19937 rng(4711);
    std::uniform_real_distribution<double> val(0.0, 40.0);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<double> x2(p2.objective.size(), 0.0);
        std::vector<double> x3(p3.objective.size(), 0.0);
        for (int m : s.horizon.milestones) {
            const double v = val(rng);
            x2[p2.index.invest(0, m)] = v;
            x3[p3.index.invest(0, m)] = v;
        }
        for (int mu : s.horizon.milestones) {
            for (const auto& period : s.rep_grid()) {
                for (int t = 0; t < period.steps; ++t) {
                    const double p = val(rng);
                    x2[p2.index.prod(0, mu, period.id, t)] = p;
                    x3[p3.index.prod(0, mu, period.id, t)] = p;
                    for (int m : planner::horizon::active_investments(s.horizon, 5, mu))
                        x3[p3.index.prod_vintage(0, m, mu, period.id, t)] =
                            planner::to_double(wm.at(m, mu)) * p;
                }
            }
        }
        const double o2 = dot(p2.objective, x2);
        const double o3 = dot(p3.objective, x3);
        CHECK(std::abs(o2 - o3) <= 1e-9 * std::max(1.0, std::abs(o2)));
    }
}

TEST_CASE("degenerate one-year lifetime ties production to its own milestone") {
    const Scenario s = desk_scenario(1);
    const Formulation f = build_p3(s);
    for (const auto& v : f.index.vars)
        if (v.kind == Variable::Kind::ProdVintage)
            CHECK(v.m == v.mu);
}

TEST_CASE("build dispatch applies salvage to total-cost methods") {
    const Scenario yearly = yearly_scenario(5, 0.05, 0.05, 8, 100.0, 2.0, 10.0);
    CHECK(build(yearly, Method::BasicTotal).salvage_applied);
    CHECK_FALSE(build(yearly, Method::BasicAnnualized).salvage_applied);
    const Scenario desk = desk_scenario(6);
    CHECK(build(desk, Method::StandardTotal).salvage_applied);
    CHECK(build(desk, Method::P1Total).salvage_applied);
    CHECK_FALSE(build(desk, Method::P2).salvage_applied);
}

TEST_CASE("decomposition terms rebuild the objective value") {
    const Scenario s = desk_scenario(5);
    for (auto method : {Method::StandardTotal, Method::P1Annualized, Method::P2, Method::P3}) {
        const Formulation f = build(s, method);
        const auto lp = f.to_lp(s);
        const auto out = planner::lp::solve(lp);
        REQUIRE(out.status == planner::lp::Status::Optimal);
        CHECK(f.decomposition_value(out.primal) ==
              doctest::Approx(out.objective).epsilon(1e-9));
    }
}

TEST_CASE("compare reports the equivalence flag for the basic pair") {
    const Scenario s = yearly_scenario(5, 0.04, 0.06, 8, 100.0, 2.0, 10.0);
    const auto report = compare({build(s, Method::BasicTotal), build(s, Method::BasicAnnualized)}, s);
    REQUIRE(report.results.size() == 2);
    CHECK(report.has_total_annualized_pair);
    CHECK(report.total_annualized_equivalent);
    CHECK(std::abs(report.results[0].objective - report.results[1].objective) <
          1e-8 * report.results[0].objective);
}

TEST_CASE("compare flags the standard-vs-p1 coefficient distortion") {
    const Scenario s = desk_scenario(6);
    const auto report =
        compare({build(s, Method::StandardAnnualized), build(s, Method::P1Annualized)}, s);
    CHECK(report.standard_vs_p1_invest_diff > 1e-9);
}

TEST_CASE("compare of a formulation against itself is all zeros") {
    const Scenario s = desk_scenario(5);
    const auto report = compare({build(s, Method::P2), build(s, Method::P2)}, s);
    REQUIRE(report.coefficient_diffs.size() == 1);
    CHECK(report.coefficient_diffs[0].max_invest_rel_diff == 0.0);
    CHECK(report.coefficient_diffs[0].max_op_rel_diff == 0.0);
}

TEST_CASE("compare rejects mismatched variable spaces") {
    const Scenario yearly = yearly_scenario(5, 0.04, 0.06, 3, 100.0, 2.0, 10.0);
    Scenario shrunk = yearly;
    shrunk.horizon.milestones = {0, 2};
    shrunk.demand = {{{0, "k0", 0}, 10.0}, {{2, "k0", 0}, 10.0}};
    CHECK_THROWS_AS(compare({build(yearly, Method::BasicTotal), build(shrunk, Method::P2)}, yearly),
                    std::invalid_argument);
}

TEST_CASE("scenario validation catches structural errors") {
    Scenario s = desk_scenario(5);
    s.demand[{3, "k0", 0}] = 1.0;  // not a milestone
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    Scenario neg = desk_scenario(5);
    neg.demand[{2, "k0", 0}] = -1.0;
    CHECK_THROWS_AS(neg.validate(), std::invalid_argument);
    Scenario empty = desk_scenario(5);
    empty.assets.clear();
    CHECK_THROWS_AS(empty.validate(), std::invalid_argument);
}
