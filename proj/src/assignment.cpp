#include "indyn/assignment.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace indyn {

// Shortest augmenting path with row/column potentials, O(n^3).
std::vector<int> hungarian_assignment(std::span<const double> cost, std::size_t n) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = match[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n, -1);
  for (std::size_t j = 1; j <= n; ++j) row_to_col[match[j] - 1] = static_cast<int>(j - 1);
  return row_to_col;
}

std::vector<int> greedy_assignment(std::span<const double> cost, std::size_t n) {
  std::vector<std::size_t> order(n * n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return cost[a] < cost[b]; });
  std::vector<int> row_to_col(n, -1);
  std::vector<char> col_used(n, 0);
  std::size_t assigned = 0;
  for (std::size_t idx : order) {
    const std::size_t row = idx / n, col = idx % n;
    if (row_to_col[row] >= 0 || col_used[col]) continue;
    row_to_col[row] = static_cast<int>(col);
    col_used[col] = 1;
    if (++assigned == n) break;
  }
  return row_to_col;
}

std::vector<int> solve_assignment(std::span<const double> cost, std::size_t n) {
  if (n <= kMaxExactAssignment) return hungarian_assignment(cost, n);
  return greedy_assignment(cost, n);
}

}  // namespace indyn
