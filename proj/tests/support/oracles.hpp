// Test-only oracles, independent of the library's solve paths.
#pragma once

#include <limits>
#include <random>
#include <vector>

#include "thermagrid/geometry.hpp"
#include "thermagrid/matching.hpp"

namespace testsupport {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (static_cast<double>(rng() >> 11) * 0x1.0p-53) * (hi - lo);
}

inline thermagrid::Point3 random_point(std::mt19937_64& rng, const thermagrid::Box3& box) {
  return {uniform(rng, box.origin.x, box.origin.x + box.lx),
          uniform(rng, box.origin.y, box.origin.y + box.ly),
          uniform(rng, box.origin.z, box.origin.z + box.lz)};
}

/// Integer lattice point; Manhattan costs built from these are exact in
/// doubles, so optimality checks can use ==.
inline thermagrid::Point3 random_lattice_point(std::mt19937_64& rng, int extent) {
  const auto coord = [&] {
    return static_cast<double>(static_cast<int>(rng() % (2 * extent + 1)) - extent);
  };
  return {coord(), coord(), coord()};
}

struct BruteForceAssignment {
  std::vector<int> col_of_row;
  double total_cost{std::numeric_limits<double>::infinity()};
};

/// Exhaustive minimum over all injective row->column assignments; among
/// cost ties keeps the lexicographically smallest assignment vector.
inline BruteForceAssignment brute_force_assignment(const thermagrid::CostMatrix& costs) {
  BruteForceAssignment best;
  std::vector<int> current(costs.rows, -1);
  std::vector<char> used(costs.cols, 0);

  const auto lex_less = [](const std::vector<int>& a, const std::vector<int>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] != b[i]) {
        return a[i] < b[i];
      }
    }
    return false;
  };

  const auto recurse = [&](auto&& self, std::size_t row, double cost) -> void {
    if (row == costs.rows) {
      if (cost < best.total_cost ||
          (cost == best.total_cost &&
           (best.col_of_row.empty() || lex_less(current, best.col_of_row)))) {
        best.total_cost = cost;
        best.col_of_row = current;
      }
      return;
    }
    for (std::size_t col = 0; col < costs.cols; ++col) {
      if (used[col]) {
        continue;
      }
      used[col] = 1;
      current[row] = static_cast<int>(col);
      self(self, row + 1, cost + costs.at(row, col));
      used[col] = 0;
    }
  };
  recurse(recurse, 0, 0.0);
  return best;
}

}  // namespace testsupport
