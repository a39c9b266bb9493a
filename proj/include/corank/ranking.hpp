#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "corank/neighbors.hpp"
#include "corank/parallel.hpp"
#include "corank/types.hpp"

namespace corank {

/// Neighbor ranks per row: rank(i,j) is the position of j in the neighbor
/// list of i sorted by (distance, index), counted from 1. Equal distances go
/// to the lower index. The diagonal stays 0 and every off-diagonal row is a
/// permutation of 1..N-1, also when duplicate points produce zero distances.
inline RankMatrix rank_matrix(const DistanceMatrix& d) {
  const std::size_t n = d.size();
  RankMatrix out{Matrix<std::int32_t>(n, n, 0)};
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    std::vector<std::int32_t> order;
    for (std::size_t i = begin; i < end; ++i) {
      detail::sorted_neighbors(d.d, i, order);
      std::int32_t* row = out.rank.row(i);
      for (std::size_t pos = 0; pos < order.size(); ++pos) {
        row[static_cast<std::size_t>(order[pos])] =
            static_cast<std::int32_t>(pos + 1);
      }
    }
  });
  return out;
}

/// Entrywise |rho - r|.
inline RankErrorMatrix rank_errors(const RankMatrix& rho, const RankMatrix& r) {
  if (rho.size() != r.size()) {
    throw input_error("rank_errors: size mismatch (" +
                      std::to_string(rho.size()) + " vs " +
                      std::to_string(r.size()) + ")");
  }
  const std::size_t n = rho.size();
  RankErrorMatrix out{Matrix<std::int32_t>(n, n, 0)};
  for (std::size_t i = 0; i < n * n; ++i) {
    out.err.data()[i] = std::abs(rho.rank.data()[i] - r.rank.data()[i]);
  }
  return out;
}

}  // namespace corank
