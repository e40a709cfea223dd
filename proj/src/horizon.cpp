#include "planner/horizon.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace planner::horizon {

void Horizon::validate() const {
    if (total_years < 1)
        throw std::invalid_argument("Horizon: total_years must be at least 1");
    if (milestones.empty())
        throw std::invalid_argument("Horizon: milestone set must not be empty");
    if (milestones.front() != 0)
        throw std::invalid_argument("Horizon: the first milestone must be year 0");
    for (std::size_t i = 1; i < milestones.size(); ++i)
        if (milestones[i] <= milestones[i - 1])
            throw std::invalid_argument("Horizon: milestones must be strictly increasing");
    if (milestones.back() > total_years - 1)
        throw std::invalid_argument("Horizon: milestones must lie within [0, Y-1]");
}

bool Horizon::is_yearly() const {
    return static_cast<int>(milestones.size()) == total_years;
}

bool Horizon::is_milestone(int year) const {
    return std::binary_search(milestones.begin(), milestones.end(), year);
}

Rational YearMapWeights::at(int m, int y) const {
    auto it = w.find({m, y});
    return it == w.end() ? Rational(0) : it->second;
}

Rational InvestOpWeights::at(int m, int mu) const {
    auto it = w.find({m, mu});
    return it == w.end() ? Rational(0) : it->second;
}

Rational TriWeights::at(int m, int y, int mu) const {
    auto it = w.find({m, y, mu});
    return it == w.end() ? Rational(0) : it->second;
}

MilestoneWeights milestone_interval_weights(const Horizon& horizon) {
    horizon.validate();
    MilestoneWeights out;
    const auto& m = horizon.milestones;
    for (std::size_t i = 0; i < m.size(); ++i) {
        const int next = (i + 1 < m.size()) ? m[i + 1] : horizon.total_years;
        out.w_invest[m[i]] = next - m[i];
    }
    return out;
}

YearMapWeights linear_year_map(const Horizon& horizon) {
    horizon.validate();
    YearMapWeights out;
    const auto& m = horizon.milestones;
    for (int y = 0; y < horizon.total_years; ++y) {
        if (horizon.is_milestone(y)) {
            out.w[{y, y}] = Rational(1);
            continue;
        }
        if (y > m.back()) {
            // Years after the last milestone map wholly to it.
            out.w[{m.back(), y}] = Rational(1);
            continue;
        }
        const auto upper = std::upper_bound(m.begin(), m.end(), y);
        const int b = *upper;
        const int a = *(upper - 1);
        out.w[{a, y}] = Rational(b - y, b - a);
        out.w[{b, y}] = Rational(y - a, b - a);
    }
    return out;
}

std::vector<int> active_investments(const Horizon& horizon, int lifetime,
                                    int operational_milestone) {
    horizon.validate();
    if (!horizon.is_milestone(operational_milestone))
        throw std::invalid_argument("active_investments: operational year is not a milestone");
    std::vector<int> active;
    for (int m : horizon.milestones)
        if (m <= operational_milestone && operational_milestone <= m + lifetime - 1)
            active.push_back(m);
    return active;
}

InvestOpWeights invest_op_split(const Horizon& horizon, int lifetime, const SplitScheme& scheme) {
    horizon.validate();
    InvestOpWeights out;
    for (int mu : horizon.milestones) {
        const auto active = active_investments(horizon, lifetime, mu);
        if (scheme.efficiency_weighted) {
            Rational total(0);
            for (int m : active) {
                auto it = scheme.efficiency.find(m);
                if (it == scheme.efficiency.end() || it->second <= Rational(0))
                    throw std::invalid_argument(
                        "invest_op_split: missing or non-positive efficiency for milestone " +
                        std::to_string(m));
                total += it->second;
            }
            for (int m : active)
                out.w[{m, mu}] = scheme.efficiency.at(m) / total;
        } else {
            const Rational share(1, static_cast<std::int64_t>(active.size()));
            for (int m : active)
                out.w[{m, mu}] = share;
        }
    }
    return out;
}

TriWeights tri_weights(const Horizon& horizon, int lifetime) {
    horizon.validate();
    if (lifetime < 1)
        throw std::invalid_argument("tri_weights: lifetime must be at least 1 year");
    const YearMapWeights ymap = linear_year_map(horizon);
    TriWeights out;
    for (int m : horizon.milestones) {
        const int window_end = std::min(m + lifetime - 1, horizon.last_year());
        for (int y = m; y <= window_end; ++y) {
            // Milestones the investment at m can reach within its lifetime.
            std::vector<int> reachable;
            for (int mu : horizon.milestones)
                if (mu >= m && mu <= m + lifetime - 1)
                    reachable.push_back(mu);
            for (int mu : horizon.milestones) {
                const Rational wt = ymap.at(mu, y);
                if (wt == Rational(0))
                    continue;
                int target = mu;
                if (mu < m || mu > m + lifetime - 1) {
                    // Masked column: shift the mass to the nearest reachable
                    // milestone (earlier one on ties).
                    target = reachable.front();
                    int best = std::abs(target - mu);
                    for (int cand : reachable) {
                        const int dist = std::abs(cand - mu);
                        if (dist < best) {
                            best = dist;
                            target = cand;
                        }
                    }
                }
                out.w[{m, y, target}] += wt;
            }
        }
    }
    return out;
}

std::string to_csv(const MilestoneWeights& weights) {
    std::ostringstream os;
    os << "m,y,mu,weight\n";
    for (const auto& [m, wt] : weights.w_invest)
        os << m << ",,," << wt << "\n";
    return os.str();
}

std::string to_csv(const YearMapWeights& weights) {
    std::ostringstream os;
    os << "m,y,mu,weight\n";
    for (const auto& [key, wt] : weights.w)
        os << key.first << "," << key.second << ",," << to_string(wt) << "\n";
    return os.str();
}

std::string to_csv(const InvestOpWeights& weights) {
    std::ostringstream os;
    os << "m,y,mu,weight\n";
    for (const auto& [key, wt] : weights.w)
        os << key.first << ",," << key.second << "," << to_string(wt) << "\n";
    return os.str();
}

std::string to_csv(const TriWeights& weights) {
    std::ostringstream os;
    os << "m,y,mu,weight\n";
    for (const auto& [key, wt] : weights.w)
        os << std::get<0>(key) << "," << std::get<1>(key) << "," << std::get<2>(key) << ","
           << to_string(wt) << "\n";
    return os.str();
}

}  // namespace planner::horizon
