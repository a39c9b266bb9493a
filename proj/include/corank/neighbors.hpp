#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "corank/parallel.hpp"
#include "corank/types.hpp"

namespace corank::detail {

/// Neighbor indices of point i (self excluded) ordered by (distance, index).
/// The index part breaks distance ties toward the lower index; rank
/// computation and kNN selection both use this order, so they can never
/// disagree.
inline void sorted_neighbors(const Matrix<double>& d, std::size_t i,
                             std::vector<std::int32_t>& order) {
  const std::size_t n = d.rows();
  order.clear();
  order.reserve(n - 1);
  for (std::size_t j = 0; j < n; ++j) {
    if (j != i) {
      order.push_back(static_cast<std::int32_t>(j));
    }
  }
  const double* row = d.row(i);
  std::sort(order.begin(), order.end(),
            [row](std::int32_t a, std::int32_t b) {
              if (row[a] != row[b]) {
                return row[a] < row[b];
              }
              return a < b;
            });
}

/// sorted_neighbors for every row at once.
inline std::vector<std::vector<std::int32_t>> all_sorted_neighbors(
    const Matrix<double>& d) {
  const std::size_t n = d.rows();
  std::vector<std::vector<std::int32_t>> orders(n);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      sorted_neighbors(d, i, orders[i]);
    }
  });
  return orders;
}

}  // namespace corank::detail
