#pragma once

#include <cstddef>
#include <vector>

#include "thermagrid/errors.hpp"

namespace thermagrid {

/// Dense bipartite cost matrix, rows = sources, cols = candidate targets.
struct CostMatrix {
  std::size_t rows{0};
  std::size_t cols{0};
  std::vector<double> entries;  // row-major

  CostMatrix() = default;
  CostMatrix(std::size_t rows_, std::size_t cols_)
      : rows(rows_), cols(cols_), entries(rows_ * cols_, 0.0) {}

  double& at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

struct AssignmentResult {
  std::vector<int> col_of_row;  // injective, one target column per row
  double total_cost{0.0};
};

/// Exact minimum-cost assignment of every row to a distinct column
/// (shortest augmenting path with potentials; requires cols >= rows).
/// Among equal-cost optima, returns the assignment vector that is
/// lexicographically smallest in row-major order. With integer-valued
/// costs the result is exact; with general reals, ties are resolved at a
/// relative tolerance of about 1e-9.
///
/// Throws InfeasibleMatchingError when cols < rows.
AssignmentResult min_cost_assignment(const CostMatrix& costs);

}  // namespace thermagrid
