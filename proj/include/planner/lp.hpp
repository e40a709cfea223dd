#pragma once

#include <string>
#include <vector>

namespace planner::lp {

enum class Sense { LessEqual, Equal, GreaterEqual };

struct Row {
    std::vector<std::pair<int, double>> coeffs;  // sparse (column, value)
    Sense sense = Sense::LessEqual;
    double rhs = 0.0;
};

/// Minimization LP with all variables bounded below by 0.
struct StandardLP {
    int num_vars = 0;
    std::vector<double> objective;      // dense, size num_vars
    std::vector<Row> rows;
    std::vector<std::string> var_names; // optional, same size as objective when present

    void validate() const;
};

enum class Status { Optimal, Infeasible, Unbounded };

struct SolveOutcome {
    Status status = Status::Infeasible;
    std::vector<double> primal;
    double objective = 0.0;
    int iterations = 0;
};

struct SolverOptions {
    double feasibility_tol = 1e-7;
    double pivot_tol = 1e-11;
    int max_iterations = 200000;
    bool parallel_pivot = false;  // OpenMP row elimination; bitwise identical to serial
};

/// Two-phase dense simplex with Bland's anti-cycling rule. Infeasible and
/// unbounded problems are reported as statuses; a vanishing pivot is a hard error.
SolveOutcome solve(const StandardLP& lp, const SolverOptions& options = {});

struct Violation {
    std::string what;
    double magnitude = 0.0;
};

/// Independent recomputation of Ax vs b and c.x for an Optimal outcome.
std::vector<Violation> verify(const StandardLP& lp, const SolveOutcome& outcome,
                              double tol = 1e-7);

/// Sparse text format shared with the formulation exporter.
std::string format_lp(const StandardLP& lp);
StandardLP parse_lp(const std::string& text);

}  // namespace planner::lp
