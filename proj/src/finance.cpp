#include "planner/finance.hpp"

#include <cmath>
#include <string>

namespace planner::finance {

namespace {

int convention_shift(AnnuityConvention convention) {
    return convention == AnnuityConvention::FirstYearDiscounted ? 1 : 0;
}

}  // namespace

double FinancialSpec::wacc_at(int year) const {
    auto it = wacc_by_year.find(year);
    if (it == wacc_by_year.end())
        throw std::invalid_argument("FinancialSpec: no WACC declared for year " +
                                    std::to_string(year));
    return it->second;
}

void FinancialSpec::validate() const {
    if (social_discount_rate <= -1.0)
        throw std::invalid_argument("FinancialSpec: social discount rate must exceed -1");
    for (const auto& [year, wacc] : wacc_by_year) {
        if (wacc <= -1.0)
            throw std::invalid_argument("FinancialSpec: WACC for year " + std::to_string(year) +
                                        " must exceed -1");
    }
}

void CostProfile::validate() const {
    if (lifetime < 1)
        throw std::invalid_argument("CostProfile: lifetime must be at least 1 year");
    for (const auto& [year, cost] : total_cost_by_year)
        if (cost < 0.0)
            throw std::invalid_argument("CostProfile: negative total cost at year " +
                                        std::to_string(year));
    for (const auto& [year, cost] : annualized_cost_by_year)
        if (cost < 0.0)
            throw std::invalid_argument("CostProfile: negative annualized cost at year " +
                                        std::to_string(year));
}

double discount_factor(double rate, int years_from_base) {
    if (rate <= -1.0)
        throw std::invalid_argument("discount_factor: rate must exceed -1");
    if (years_from_base < 0)
        throw std::invalid_argument("discount_factor: years_from_base must be >= 0");
    return std::pow(1.0 + rate, -years_from_base);
}

double annuity_discount_sum(double wacc, int first, int last, AnnuityConvention convention) {
    if (wacc <= -1.0)
        throw std::invalid_argument("annuity_discount_sum: wacc must exceed -1");
    const int shift = convention_shift(convention);
    double sum = 0.0;
    for (int j = first; j <= last; ++j)
        sum += std::pow(1.0 + wacc, -(j + shift));
    return sum;
}

double annualize(double total_cost, double wacc, int lifetime, AnnuityConvention convention) {
    if (wacc <= 0.0)
        throw std::invalid_argument("annualize: wacc must be positive");
    if (lifetime < 1)
        throw std::invalid_argument("annualize: lifetime must be at least 1 year");
    if (total_cost < 0.0)
        throw std::invalid_argument("annualize: total cost must be non-negative");
    const double tail = 1.0 - std::pow(1.0 + wacc, -lifetime);
    double factor = wacc / tail;
    if (convention == AnnuityConvention::FirstYearUndiscounted)
        factor /= 1.0 + wacc;
    return factor * total_cost;
}

double total_from_annuities(std::span<const double> annuities, double wacc,
                            AnnuityConvention convention) {
    if (annuities.empty())
        throw std::invalid_argument("total_from_annuities: empty annuity profile");
    if (wacc <= -1.0)
        throw std::invalid_argument("total_from_annuities: wacc must exceed -1");
    const int shift = convention_shift(convention);
    double total = 0.0;
    for (std::size_t i = 0; i < annuities.size(); ++i)
        total += annuities[i] * std::pow(1.0 + wacc, -(static_cast<int>(i) + shift));
    return total;
}

double salvage_value(double annualized_cost, double wacc, int lifetime, int build_year,
                     int last_modelled_year) {
    return salvage_value(annualized_cost, wacc, lifetime, build_year, last_modelled_year,
                         AnnuityConvention::FirstYearUndiscounted);
}

double salvage_value(double annualized_cost, double wacc, int lifetime, int build_year,
                     int last_modelled_year, AnnuityConvention convention) {
    if (build_year < 0 || build_year > last_modelled_year)
        throw std::invalid_argument("salvage_value: build year must lie in [0, last modelled year]");
    if (lifetime < 1)
        throw std::invalid_argument("salvage_value: lifetime must be at least 1 year");
    // Offsets relative to the build year; the tail starts after the last modelled year.
    const int first = last_modelled_year + 1 - build_year;
    const int last = lifetime - 1;
    if (first > last)
        return 0.0;
    return annualized_cost * annuity_discount_sum(wacc, first, last, convention);
}

double salvage_percentage(double salvage, double total_cost) {
    if (total_cost <= 0.0)
        throw std::invalid_argument("salvage_percentage: total cost must be positive");
    return salvage / total_cost;
}

}  // namespace planner::finance
