#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace indyn {

// Square linear assignment. `cost` is row-major n x n; the result maps each
// row to its column.
std::vector<int> hungarian_assignment(std::span<const double> cost, std::size_t n);

// Picks the globally cheapest remaining pair until all rows are assigned.
// Ties are broken by (row, column) order.
std::vector<int> greedy_assignment(std::span<const double> cost, std::size_t n);

// Hungarian up to this size, greedy above.
inline constexpr std::size_t kMaxExactAssignment = 32;

std::vector<int> solve_assignment(std::span<const double> cost, std::size_t n);

}  // namespace indyn
