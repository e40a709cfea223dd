#include "planner/lp.hpp"

#include "planner/simplex_kernel.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace planner::lp {

void StandardLP::validate() const {
    if (num_vars < 0)
        throw std::invalid_argument("StandardLP: negative variable count");
    if (static_cast<int>(objective.size()) != num_vars)
        throw std::invalid_argument("StandardLP: objective size does not match num_vars");
    for (double c : objective)
        if (!std::isfinite(c))
            throw std::invalid_argument("StandardLP: non-finite objective coefficient");
    for (const auto& row : rows) {
        if (!std::isfinite(row.rhs))
            throw std::invalid_argument("StandardLP: non-finite right-hand side");
        for (const auto& [col, value] : row.coeffs) {
            if (col < 0 || col >= num_vars)
                throw std::invalid_argument("StandardLP: row references unknown column");
            if (!std::isfinite(value))
                throw std::invalid_argument("StandardLP: non-finite row coefficient");
        }
    }
    if (!var_names.empty() && static_cast<int>(var_names.size()) != num_vars)
        throw std::invalid_argument("StandardLP: var_names size does not match num_vars");
}

namespace {

// Dense tableau: m constraint rows plus two cost rows (phase 2, then phase 1),
// each of width ncols = total columns + 1 (rhs last).
struct Tableau {
    int nrows = 0;   // constraint rows only
    int ncols = 0;   // columns + 1
    std::vector<double> data;
    std::vector<int> basis;  // basic column per constraint row

    double* row(int r) { return data.data() + static_cast<std::size_t>(r) * ncols; }
    const double* row(int r) const { return data.data() + static_cast<std::size_t>(r) * ncols; }
    double& at(int r, int c) { return row(r)[c]; }
    double at(int r, int c) const { return row(r)[c]; }
};

void pivot(Tableau& t, int pr, int pc, const SolverOptions& options) {
    double* prow = t.row(pr);
    const double pv = prow[pc];
    if (std::abs(pv) < options.pivot_tol)
        throw std::runtime_error("simplex: numeric breakdown, pivot element below tolerance");
    const double inv = 1.0 / pv;
    for (int j = 0; j < t.ncols; ++j)
        prow[j] *= inv;
    prow[pc] = 1.0;
    if (options.parallel_pivot)
        detail::eliminate_parallel(t.data.data(), t.nrows + 2, t.ncols, pr, pc);
    else
        detail::eliminate_serial(t.data.data(), t.nrows + 2, t.ncols, pr, pc);
    t.basis[pr] = pc;
}

// Bland's rule: entering column is the lowest-index eligible column with a
// negative reduced cost; the leaving row breaks ratio ties by the lowest basic
// variable index.
int choose_entering(const Tableau& t, int cost_row, int num_eligible, double rc_tol) {
    const double* costs = t.row(cost_row);
    for (int j = 0; j < num_eligible; ++j)
        if (costs[j] < -rc_tol)
            return j;
    return -1;
}

int choose_leaving(const Tableau& t, int pc, const SolverOptions& options) {
    int best = -1;
    double best_ratio = 0.0;
    const int rhs = t.ncols - 1;
    for (int i = 0; i < t.nrows; ++i) {
        const double a = t.at(i, pc);
        if (a <= options.pivot_tol)
            continue;
        const double ratio = t.at(i, rhs) / a;
        if (best < 0 || ratio < best_ratio - 1e-12 ||
            (ratio < best_ratio + 1e-12 && t.basis[i] < t.basis[best])) {
            best = i;
            best_ratio = ratio;
        }
    }
    return best;
}

int run_phase(Tableau& t, int cost_row, int num_eligible, const SolverOptions& options,
              int iterations_used, bool* unbounded) {
    const double rc_tol = 1e-9;
    int iterations = iterations_used;
    *unbounded = false;
    while (true) {
        const int pc = choose_entering(t, cost_row, num_eligible, rc_tol);
        if (pc < 0)
            return iterations;
        const int pr = choose_leaving(t, pc, options);
        if (pr < 0) {
            *unbounded = true;
            return iterations;
        }
        pivot(t, pr, pc, options);
        if (++iterations > options.max_iterations)
            throw std::runtime_error("simplex: iteration limit exceeded");
    }
}

}  // namespace

SolveOutcome solve(const StandardLP& lp, const SolverOptions& options) {
    lp.validate();
    const int n = lp.num_vars;
    const int m = static_cast<int>(lp.rows.size());

    // Column layout: structural | slack/surplus | artificial.
    int num_slack = 0;
    int num_artificial = 0;
    for (const auto& row : lp.rows) {
        const bool flipped = row.rhs < 0.0;
        Sense sense = row.sense;
        if (flipped) {
            if (sense == Sense::LessEqual)
                sense = Sense::GreaterEqual;
            else if (sense == Sense::GreaterEqual)
                sense = Sense::LessEqual;
        }
        if (sense != Sense::Equal)
            ++num_slack;
        if (sense != Sense::LessEqual)
            ++num_artificial;
    }

    const int total_cols = n + num_slack + num_artificial;
    Tableau t;
    t.nrows = m;
    t.ncols = total_cols + 1;
    t.data.assign(static_cast<std::size_t>(m + 2) * t.ncols, 0.0);
    t.basis.assign(m, -1);

    const int rhs = total_cols;
    int next_slack = n;
    int next_artificial = n + num_slack;
    for (int i = 0; i < m; ++i) {
        const Row& row = lp.rows[i];
        const double sign = row.rhs < 0.0 ? -1.0 : 1.0;
        Sense sense = row.sense;
        if (sign < 0.0) {
            if (sense == Sense::LessEqual)
                sense = Sense::GreaterEqual;
            else if (sense == Sense::GreaterEqual)
                sense = Sense::LessEqual;
        }
        for (const auto& [col, value] : row.coeffs)
            t.at(i, col) += sign * value;
        t.at(i, rhs) = sign * row.rhs;
        if (sense == Sense::LessEqual) {
            t.at(i, next_slack) = 1.0;
            t.basis[i] = next_slack++;
        } else if (sense == Sense::GreaterEqual) {
            t.at(i, next_slack) = -1.0;
            ++next_slack;
            t.at(i, next_artificial) = 1.0;
            t.basis[i] = next_artificial++;
        } else {
            t.at(i, next_artificial) = 1.0;
            t.basis[i] = next_artificial++;
        }
    }

    // Cost rows: phase 2 carries the real objective, phase 1 the artificials.
    const int phase2_row = m;
    const int phase1_row = m + 1;
    for (int j = 0; j < n; ++j)
        t.at(phase2_row, j) = lp.objective[j];
    for (int j = n + num_slack; j < total_cols; ++j)
        t.at(phase1_row, j) = 1.0;
    // Make the cost rows consistent with the starting basis.
    for (int i = 0; i < m; ++i) {
        for (int cost_row : {phase2_row, phase1_row}) {
            const double factor = t.at(cost_row, t.basis[i]);
            if (factor != 0.0) {
                double* cr = t.row(cost_row);
                const double* br = t.row(i);
                for (int j = 0; j < t.ncols; ++j)
                    cr[j] -= factor * br[j];
                cr[t.basis[i]] = 0.0;
            }
        }
    }

    SolveOutcome outcome;
    bool unbounded = false;
    int iterations = 0;

    if (num_artificial > 0) {
        iterations = run_phase(t, phase1_row, total_cols, options, iterations, &unbounded);
        const double phase1_objective = -t.at(phase1_row, rhs);
        if (phase1_objective > options.feasibility_tol) {
            outcome.status = Status::Infeasible;
            outcome.iterations = iterations;
            return outcome;
        }
        // Drive leftover artificials out of the basis; rows where that is
        // impossible are redundant and dropped.
        const int first_artificial = n + num_slack;
        for (int i = 0; i < t.nrows;) {
            if (t.basis[i] < first_artificial) {
                ++i;
                continue;
            }
            int pc = -1;
            for (int j = 0; j < first_artificial; ++j) {
                if (std::abs(t.at(i, j)) > options.pivot_tol) {
                    pc = j;
                    break;
                }
            }
            if (pc >= 0) {
                pivot(t, i, pc, options);
                ++i;
            } else {
                // Redundant row: remove it from the tableau.
                const int last = t.nrows - 1;
                if (i != last) {
                    for (int j = 0; j < t.ncols; ++j)
                        std::swap(t.at(i, j), t.at(last, j));
                    std::swap(t.basis[i], t.basis[last]);
                }
                // Shift the cost rows up over the removed row.
                for (int j = 0; j < t.ncols; ++j) {
                    t.at(last, j) = t.at(last + 1, j);
                    t.at(last + 1, j) = t.at(last + 2, j);
                }
                t.basis.pop_back();
                --t.nrows;
                t.data.resize(static_cast<std::size_t>(t.nrows + 2) * t.ncols);
            }
        }
    }

    const int p2_row = t.nrows;
    const int num_eligible = n + num_slack;  // artificials may not re-enter
    iterations = run_phase(t, p2_row, num_eligible, options, iterations, &unbounded);
    outcome.iterations = iterations;
    if (unbounded) {
        outcome.status = Status::Unbounded;
        return outcome;
    }

    outcome.status = Status::Optimal;
    outcome.primal.assign(n, 0.0);
    for (int i = 0; i < t.nrows; ++i)
        if (t.basis[i] < n)
            outcome.primal[t.basis[i]] = t.at(i, t.ncols - 1);
    double objective = 0.0;
    for (int j = 0; j < n; ++j)
        objective += lp.objective[j] * outcome.primal[j];
    outcome.objective = objective;
    return outcome;
}

std::vector<Violation> verify(const StandardLP& lp, const SolveOutcome& outcome, double tol) {
    if (outcome.status != Status::Optimal)
        throw std::invalid_argument("verify: outcome is not Optimal");
    std::vector<Violation> violations;
    for (std::size_t j = 0; j < outcome.primal.size(); ++j) {
        if (outcome.primal[j] < -1e-9)
            violations.push_back({"variable " + std::to_string(j) + " below lower bound",
                                  -outcome.primal[j]});
    }
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
        const Row& row = lp.rows[i];
        double lhs = 0.0;
        for (const auto& [col, value] : row.coeffs)
            lhs += value * outcome.primal[col];
        double breach = 0.0;
        if (row.sense == Sense::LessEqual)
            breach = lhs - row.rhs;
        else if (row.sense == Sense::GreaterEqual)
            breach = row.rhs - lhs;
        else
            breach = std::abs(lhs - row.rhs);
        if (breach > tol)
            violations.push_back({"row " + std::to_string(i) + " violated", breach});
    }
    double objective = 0.0;
    for (int j = 0; j < lp.num_vars; ++j)
        objective += lp.objective[j] * outcome.primal[j];
    if (std::abs(objective - outcome.objective) > tol)
        violations.push_back({"objective value mismatch", std::abs(objective - outcome.objective)});
    return violations;
}

namespace {

std::string fmt_full(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

const char* sense_token(Sense s) {
    switch (s) {
        case Sense::LessEqual: return "le";
        case Sense::Equal: return "eq";
        default: return "ge";
    }
}

Sense parse_sense(const std::string& token) {
    if (token == "le") return Sense::LessEqual;
    if (token == "eq") return Sense::Equal;
    if (token == "ge") return Sense::GreaterEqual;
    throw std::invalid_argument("parse_lp: unknown sense token '" + token + "'");
}

}  // namespace

std::string format_lp(const StandardLP& lp) {
    lp.validate();
    std::ostringstream os;
    os << "# planner-lp v1\n";
    os << "minimize " << lp.num_vars << "\n";
    for (std::size_t j = 0; j < lp.var_names.size(); ++j)
        os << "n " << j << " " << lp.var_names[j] << "\n";
    for (int j = 0; j < lp.num_vars; ++j)
        if (lp.objective[j] != 0.0)
            os << "c " << j << " " << fmt_full(lp.objective[j]) << "\n";
    for (const auto& row : lp.rows) {
        os << "r " << sense_token(row.sense) << " " << fmt_full(row.rhs);
        for (const auto& [col, value] : row.coeffs)
            os << " " << col << " " << fmt_full(value);
        os << "\n";
    }
    os << "bounds nonneg\n";
    return os.str();
}

StandardLP parse_lp(const std::string& text) {
    StandardLP lp;
    std::istringstream is(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream ls(line);
        std::string keyword;
        ls >> keyword;
        if (keyword == "minimize") {
            ls >> lp.num_vars;
            lp.objective.assign(lp.num_vars, 0.0);
            lp.var_names.assign(lp.num_vars, "");
            header_seen = true;
        } else if (!header_seen) {
            throw std::invalid_argument("parse_lp: missing 'minimize' header");
        } else if (keyword == "n") {
            int j;
            std::string name;
            ls >> j >> name;
            lp.var_names.at(j) = name;
        } else if (keyword == "c") {
            int j;
            double value;
            ls >> j >> value;
            lp.objective.at(j) = value;
        } else if (keyword == "r") {
            Row row;
            std::string sense;
            ls >> sense >> row.rhs;
            row.sense = parse_sense(sense);
            int col;
            double value;
            while (ls >> col >> value)
                row.coeffs.emplace_back(col, value);
            lp.rows.push_back(std::move(row));
        } else if (keyword == "bounds") {
            continue;
        } else {
            throw std::invalid_argument("parse_lp: unknown keyword '" + keyword + "'");
        }
    }
    if (!header_seen)
        throw std::invalid_argument("parse_lp: empty document");
    bool any_name = false;
    for (const auto& name : lp.var_names)
        if (!name.empty())
            any_name = true;
    if (!any_name)
        lp.var_names.clear();
    lp.validate();
    return lp;
}

}  // namespace planner::lp
