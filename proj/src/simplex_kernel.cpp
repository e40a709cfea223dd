#include "planner/simplex_kernel.hpp"

namespace planner::lp::detail {

namespace {

inline void eliminate_one_row(double* row, const double* pivot, int ncols, int pivot_col) {
    const double factor = row[pivot_col];
    if (factor == 0.0)
        return;
    for (int j = 0; j < ncols; ++j)
        row[j] -= factor * pivot[j];
    row[pivot_col] = 0.0;  // clamp roundoff in the pivot column
}

}  // namespace

void eliminate_serial(double* tableau, int nrows, int ncols, int pivot_row, int pivot_col) {
    const double* pivot = tableau + static_cast<std::size_t>(pivot_row) * ncols;
    for (int r = 0; r < nrows; ++r) {
        if (r == pivot_row)
            continue;
        eliminate_one_row(tableau + static_cast<std::size_t>(r) * ncols, pivot, ncols, pivot_col);
    }
}

void eliminate_parallel(double* tableau, int nrows, int ncols, int pivot_row, int pivot_col) {
    const double* pivot = tableau + static_cast<std::size_t>(pivot_row) * ncols;
#pragma omp parallel for schedule(static)
    for (int r = 0; r < nrows; ++r) {
        if (r == pivot_row)
            continue;
        eliminate_one_row(tableau + static_cast<std::size_t>(r) * ncols, pivot, ncols, pivot_col);
    }
}

}  // namespace planner::lp::detail
