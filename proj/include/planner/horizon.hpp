#pragma once

#include "planner/rational.hpp"

#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace planner::horizon {

struct Horizon {
    int total_years = 0;             // Y: years 0..Y-1 are in the horizon
    std::vector<int> milestones;     // strictly increasing, starts at 0

    void validate() const;
    bool is_yearly() const;
    int last_year() const { return total_years - 1; }
    int last_milestone() const { return milestones.back(); }
    bool is_milestone(int year) const;
};

/// W^I: how many calendar years each milestone stands in for.
struct MilestoneWeights {
    std::map<int, std::int64_t> w_invest;
};

/// W^O: fractional mapping of each calendar year onto adjacent milestones.
struct YearMapWeights {
    std::map<std::pair<int, int>, Rational> w;  // (milestone m, year y) -> weight

    Rational at(int m, int y) const;
};

/// W^M: fixed split of an operational milestone's production across the
/// investment vintages active there.
struct InvestOpWeights {
    std::map<std::pair<int, int>, Rational> w;  // (invest m, operational mu) -> weight

    Rational at(int m, int mu) const;
};

/// W^Y: per-(investment, year) distribution over operational milestones,
/// masked to the investment's lifetime window.
struct TriWeights {
    std::map<std::tuple<int, int, int>, Rational> w;  // (m, y, mu) -> weight

    Rational at(int m, int y, int mu) const;
};

struct SplitScheme {
    bool efficiency_weighted = false;
    std::map<int, Rational> efficiency;  // per milestone, only when efficiency_weighted

    static SplitScheme equal_split() { return {}; }
};

MilestoneWeights milestone_interval_weights(const Horizon& horizon);

YearMapWeights linear_year_map(const Horizon& horizon);

/// Milestones whose investment is still alive at the operational milestone:
/// { m in M : m <= mu <= m + lifetime - 1 }.
std::vector<int> active_investments(const Horizon& horizon, int lifetime, int operational_milestone);

InvestOpWeights invest_op_split(const Horizon& horizon, int lifetime, const SplitScheme& scheme);

TriWeights tri_weights(const Horizon& horizon, int lifetime);

/// CSV dumps with columns m,y,mu,weight; blank where an index does not apply.
std::string to_csv(const MilestoneWeights& weights);
std::string to_csv(const YearMapWeights& weights);
std::string to_csv(const InvestOpWeights& weights);
std::string to_csv(const TriWeights& weights);

}  // namespace planner::horizon
