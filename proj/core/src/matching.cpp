#include "thermagrid/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace thermagrid {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Optimal one-sided matching of rows [first_row, R) into the given columns.
// col_pos_of_row holds positions into `cols`; u/v are dual potentials with
// c - u - v >= 0 everywhere and equality on matched edges.
struct SubSolution {
  std::vector<int> col_pos_of_row;
  std::vector<double> u;
  std::vector<double> v;
  double cost{0.0};
};

// Jonker-Volgenant style shortest augmenting path, rectangular (n <= m).
SubSolution jv_solve(const CostMatrix& a, std::size_t first_row,
                     const std::vector<int>& cols) {
  const std::size_t n = a.rows - first_row;
  const std::size_t m = cols.size();

  // 1-based with column 0 as the virtual root of each augmentation.
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0), minv(m + 1, 0.0);
  std::vector<int> p(m + 1, 0), way(m + 1, 0);
  std::vector<char> used(m + 1, 0);

  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = static_cast<int>(i);
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = static_cast<std::size_t>(p[j0]);
      const std::size_t row = first_row + i0 - 1;
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) {
          continue;
        }
        const double cur =
            a.at(row, static_cast<std::size_t>(cols[j - 1])) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = static_cast<int>(j0);
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[static_cast<std::size_t>(p[j])] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = static_cast<std::size_t>(way[j0]);
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  SubSolution sol;
  sol.col_pos_of_row.assign(n, -1);
  for (std::size_t j = 1; j <= m; ++j) {
    if (p[j] != 0) {
      sol.col_pos_of_row[static_cast<std::size_t>(p[j]) - 1] = static_cast<int>(j - 1);
    }
  }
  sol.u.assign(u.begin() + 1, u.end());
  sol.v.assign(v.begin() + 1, v.end());
  for (std::size_t r = 0; r < n; ++r) {
    sol.cost += a.at(first_row + r,
                     static_cast<std::size_t>(cols[static_cast<std::size_t>(
                         sol.col_pos_of_row[r])]));
  }
  return sol;
}

}  // namespace

AssignmentResult min_cost_assignment(const CostMatrix& costs) {
  const std::size_t R = costs.rows;
  const std::size_t C = costs.cols;
  if (costs.entries.size() != R * C) {
    throw ValidationError("cost matrix: entry count does not match rows*cols");
  }
  for (double e : costs.entries) {
    if (!std::isfinite(e) || e < 0.0) {
      throw ValidationError("cost matrix: entries must be finite and >= 0");
    }
  }
  if (R == 0) {
    return {};
  }
  if (C < R) {
    throw InfeasibleMatchingError(
        "no perfect matching on the source side: " + std::to_string(C) +
        " targets for " + std::to_string(R) + " sources");
  }

  double max_entry = 0.0;
  for (double e : costs.entries) {
    max_entry = std::max(max_entry, e);
  }
  const double tol = 1e-9 * std::max(1.0, max_entry * static_cast<double>(R));

  std::vector<int> avail(C);
  std::iota(avail.begin(), avail.end(), 0);

  AssignmentResult result;
  result.col_of_row.assign(R, -1);

  SubSolution cur = jv_solve(costs, 0, avail);
  double c_rem = cur.cost;

  // Fix rows in order, always taking the smallest column index that still
  // extends to a completion of total cost c_rem. Columns whose dual slack
  // exceeds the duality gap cannot appear in any optimal completion, so
  // only the remainder ever pays a check solve.
  for (std::size_t i = 0; i < R; ++i) {
    double dual = 0.0;
    for (double ui : cur.u) {
      dual += ui;
    }
    for (double vj : cur.v) {
      dual += std::min(vj, 0.0);
    }
    const double gap = std::max(0.0, c_rem - dual);
    const int matched_pos = cur.col_pos_of_row[0];

    int chosen_pos = -1;
    SubSolution next;
    bool have_next = false;
    for (std::size_t pos = 0; pos < avail.size(); ++pos) {
      const double entry = costs.at(i, static_cast<std::size_t>(avail[pos]));
      const double slack = entry - cur.u[0] - cur.v[pos];
      const double posv = std::max(cur.v[pos], 0.0);
      if (slack + posv > gap + tol) {
        continue;
      }
      if (static_cast<int>(pos) == matched_pos) {
        chosen_pos = matched_pos;
        break;
      }
      std::vector<int> rest;
      rest.reserve(avail.size() - 1);
      for (std::size_t q = 0; q < avail.size(); ++q) {
        if (q != pos) {
          rest.push_back(avail[q]);
        }
      }
      SubSolution sub;
      if (i + 1 < R) {
        sub = jv_solve(costs, i + 1, rest);
      }
      if (std::abs(entry + sub.cost - c_rem) <= tol) {
        chosen_pos = static_cast<int>(pos);
        next = std::move(sub);
        have_next = true;
        break;
      }
    }

    if (chosen_pos < 0) {
      // the matched column always passes both tests; reaching here means the
      // dual invariants no longer hold
      throw std::logic_error("min_cost_assignment: no completion matched the optimal cost");
    }
    const std::size_t pos = static_cast<std::size_t>(chosen_pos);
    const int col = avail[pos];
    result.col_of_row[i] = col;
    avail.erase(avail.begin() + static_cast<std::ptrdiff_t>(pos));

    if (i + 1 == R) {
      break;
    }
    if (have_next) {
      cur = std::move(next);
      c_rem = cur.cost;
    } else {
      // Accepted the edge the current solution already used: shed row i and
      // its column, keep the rest of the matching and duals.
      c_rem -= costs.at(i, static_cast<std::size_t>(col));
      cur.u.erase(cur.u.begin());
      cur.v.erase(cur.v.begin() + chosen_pos);
      cur.col_pos_of_row.erase(cur.col_pos_of_row.begin());
      for (int& cp : cur.col_pos_of_row) {
        if (cp > chosen_pos) {
          --cp;
        }
      }
      cur.cost = c_rem;
    }
  }

  result.total_cost = 0.0;
  for (std::size_t i = 0; i < R; ++i) {
    result.total_cost += costs.at(i, static_cast<std::size_t>(result.col_of_row[i]));
  }
  return result;
}

}  // namespace thermagrid
