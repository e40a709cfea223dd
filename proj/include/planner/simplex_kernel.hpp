#pragma once

#include <cstddef>

namespace planner::lp::detail {

// Row elimination step of a dense simplex pivot. The pivot row must already be
// scaled so that tableau[pivot_row*ncols + pivot_col] == 1. Every other row r
// gets row_r -= row_r[pivot_col] * pivot_row. The parallel variant distributes
// rows across OpenMP threads and is bitwise identical to the serial reference.
void eliminate_serial(double* tableau, int nrows, int ncols, int pivot_row, int pivot_col);
void eliminate_parallel(double* tableau, int nrows, int ncols, int pivot_row, int pivot_col);

}  // namespace planner::lp::detail
