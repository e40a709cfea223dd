#pragma once

#include <map>
#include <span>
#include <stdexcept>

namespace planner::finance {

/// Which year the first annuity payment falls on, relative to the build year.
/// FirstYearUndiscounted pays at offsets 0..LT-1, FirstYearDiscounted at 1..LT.
enum class AnnuityConvention { FirstYearUndiscounted, FirstYearDiscounted };

struct FinancialSpec {
    double social_discount_rate = 0.0;          // R, fraction per year
    std::map<int, double> wacc_by_year;         // year -> WACC fraction

    double wacc_at(int year) const;
    void validate() const;                      // all rates > -1
};

struct CostProfile {
    std::map<int, double> total_cost_by_year;       // C^T, currency/MW
    std::map<int, double> annualized_cost_by_year;  // C^A, currency/MW/year
    int lifetime = 1;                               // LT, years

    void validate() const;
    bool has_total(int year) const { return total_cost_by_year.count(year) != 0; }
    bool has_annualized(int year) const { return annualized_cost_by_year.count(year) != 0; }
};

/// 1/(1+rate)^years_from_base. Rejects rate <= -1.
double discount_factor(double rate, int years_from_base);

/// Sum of (1+wacc)^-(j+shift) for j = first..last, where shift is 1 under
/// FirstYearDiscounted and 0 otherwise. Empty range yields 0.
double annuity_discount_sum(double wacc, int first, int last, AnnuityConvention convention);

/// Constant annuity covering total_cost over lifetime years at the given WACC.
/// Rejects wacc <= 0 (the closed form degenerates) and lifetime < 1.
double annualize(double total_cost, double wacc, int lifetime, AnnuityConvention convention);

/// Present value at the build year of an arbitrary annuity profile, exponents
/// chosen by the convention. The profile length is the lifetime.
double total_from_annuities(std::span<const double> annuities, double wacc,
                            AnnuityConvention convention);

/// Discounted annuity mass falling strictly after the last modelled year:
/// SV_y = C^A * sum_{j = Y+1}^{y+LT-1} (1+WACC)^-(j-y). Zero when the lifetime
/// ends within the modelled span.
double salvage_value(double annualized_cost, double wacc, int lifetime, int build_year,
                     int last_modelled_year);

/// Convention-aware variant used by the formulation builders so that the
/// truncated annuity sum plus the salvage tail always reconstructs C^T.
double salvage_value(double annualized_cost, double wacc, int lifetime, int build_year,
                     int last_modelled_year, AnnuityConvention convention);

/// SVP_y = SV_y / C^T_y. Rejects total_cost <= 0.
double salvage_percentage(double salvage, double total_cost);

}  // namespace planner::finance
