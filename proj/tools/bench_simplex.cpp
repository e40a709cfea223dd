// Compares the serial and OpenMP pivot kernels on randomly generated dense
// LPs and reports wall time plus a bitwise-equality check of the solutions.

#include "planner/lp.hpp"

#include <chrono>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

planner::lp::StandardLP random_lp(int num_vars, int num_rows, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> coeff(0.1, 2.0);
    std::uniform_real_distribution<double> rhs(1.0, 50.0);
    planner::lp::StandardLP lp;
    lp.num_vars = num_vars;
    lp.objective.resize(num_vars);
    for (double& c : lp.objective)
        c = coeff(rng);
    for (int i = 0; i < num_rows; ++i) {
        planner::lp::Row row;
        for (int j = 0; j < num_vars; ++j)
            row.coeffs.emplace_back(j, coeff(rng));
        row.sense = planner::lp::Sense::GreaterEqual;  // cover-style rows keep it feasible
        row.rhs = rhs(rng);
        lp.rows.push_back(std::move(row));
    }
    return lp;
}

double time_solve(const planner::lp::StandardLP& lp, bool parallel,
                  planner::lp::SolveOutcome* outcome) {
    planner::lp::SolverOptions options;
    options.parallel_pivot = parallel;
    options.max_iterations = 2000000;
    const auto start = std::chrono::steady_clock::now();
    *outcome = planner::lp::solve(lp, options);
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count();
}

}  // namespace

int main(int argc, char** argv) {
    int num_vars = argc > 1 ? std::atoi(argv[1]) : 100;
    int num_rows = argc > 2 ? std::atoi(argv[2]) : 75;

#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("openmp: not enabled, parallel path falls back to serial\n");
#endif
    std::printf("%8s %8s %12s %12s %10s %s\n", "vars", "rows", "serial[s]", "parallel[s]",
                "speedup", "identical");

    for (int scale : {1, 2, 4}) {
        const int n = num_vars * scale;
        const int m = num_rows * scale;
        const planner::lp::StandardLP lp = random_lp(n, m, 42);
        planner::lp::SolveOutcome serial, parallel;
        const double t_serial = time_solve(lp, false, &serial);
        const double t_parallel = time_solve(lp, true, &parallel);
        const bool identical = serial.status == parallel.status &&
                               serial.iterations == parallel.iterations &&
                               serial.primal == parallel.primal;
        std::printf("%8d %8d %12.4f %12.4f %9.2fx %s\n", n, m, t_serial, t_parallel,
                    t_serial / t_parallel, identical ? "yes" : "NO");
        if (!identical)
            return 1;
    }
    return 0;
}
