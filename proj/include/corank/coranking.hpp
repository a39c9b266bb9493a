#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <string>

#include "corank/types.hpp"

namespace corank {

/// (N-1)x(N-1) histogram of rank pairs: entry (k,l) counts ordered point
/// pairs with high rank k and low rank l. Stored dense; cell (k,l) lives at
/// q(k-1, l-1). Row and column sums are N, the total is N(N-1).
struct CoRankingMatrix {
  Matrix<std::uint32_t> q;
  std::size_t points = 0;

  std::uint32_t at(int k, int l) const {
    return q(static_cast<std::size_t>(k - 1), static_cast<std::size_t>(l - 1));
  }
};

/// Pair counts of the co-ranking matrix split at K: the diagonal inside the
/// K-block, the off-diagonal mass inside it (mild), the mass crossing the
/// boundary (hard), and the off-diagonal mass beyond it.
struct BlockCounts {
  int K = 0;
  std::uint64_t preserved = 0;         // k == l <= K
  std::uint64_t mild_intrusions = 0;   // l < k <= K
  std::uint64_t mild_extrusions = 0;   // k < l <= K
  std::uint64_t hard_intrusions = 0;   // l <= K < k
  std::uint64_t hard_extrusions = 0;   // k <= K < l
  std::uint64_t outside = 0;           // k > K, l > K, k != l
};

/// Histogram over (min rank, rank error) pairs: h(m-1, e) counts ordered
/// pairs with min(rho, r) = m and |rho - r| = e. One cumulative pass over it
/// evaluates the rank-error quality on the whole parameter grid, because a
/// pair is significant at kappa_s exactly when its min rank is <= kappa_s.
struct MinErrHistogram {
  Matrix<std::uint32_t> h;  // rows: m = 1..N-1; cols: e = 0..N-2
  std::size_t points = 0;
};

namespace detail {

inline void require_same_size(const RankMatrix& rho, const RankMatrix& r,
                              const char* who) {
  if (rho.size() != r.size()) {
    throw input_error(std::string(who) + ": size mismatch (" +
                      std::to_string(rho.size()) + " vs " +
                      std::to_string(r.size()) + ")");
  }
  if (rho.size() < 2) {
    throw input_error(std::string(who) + ": need at least 2 points");
  }
}

}  // namespace detail

inline CoRankingMatrix coranking_matrix(const RankMatrix& rho,
                                        const RankMatrix& r) {
  detail::require_same_size(rho, r, "coranking_matrix");
  const std::size_t n = rho.size();
  CoRankingMatrix out{Matrix<std::uint32_t>(n - 1, n - 1, 0), n};
  for (std::size_t i = 0; i < n; ++i) {
    const std::int32_t* hi = rho.rank.row(i);
    const std::int32_t* lo = r.rank.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) {
        continue;
      }
      ++out.q(static_cast<std::size_t>(hi[j] - 1),
              static_cast<std::size_t>(lo[j] - 1));
    }
  }
  return out;
}

inline BlockCounts block_counts(const CoRankingMatrix& q, int K) {
  const std::size_t n = q.points;
  if (K < 1 || static_cast<std::size_t>(K) > n - 1) {
    throw std::invalid_argument("block_counts: K must be in [1, N-1], got " +
                                std::to_string(K));
  }
  BlockCounts out;
  out.K = K;
  for (std::size_t row = 0; row < n - 1; ++row) {
    const int k = static_cast<int>(row) + 1;
    for (std::size_t col = 0; col < n - 1; ++col) {
      const int l = static_cast<int>(col) + 1;
      const std::uint64_t c = q.q(row, col);
      if (c == 0) {
        continue;
      }
      if (k == l) {
        if (k <= K) {
          out.preserved += c;
        }
      } else if (k <= K && l <= K) {
        (l < k ? out.mild_intrusions : out.mild_extrusions) += c;
      } else if (l <= K) {
        out.hard_intrusions += c;  // l <= K < k
      } else if (k <= K) {
        out.hard_extrusions += c;  // k <= K < l
      } else {
        out.outside += c;
      }
    }
  }
  return out;
}

inline MinErrHistogram min_error_histogram(const RankMatrix& rho,
                                           const RankMatrix& r) {
  detail::require_same_size(rho, r, "min_error_histogram");
  const std::size_t n = rho.size();
  MinErrHistogram out{Matrix<std::uint32_t>(n - 1, n - 1, 0), n};
  for (std::size_t i = 0; i < n; ++i) {
    const std::int32_t* hi = rho.rank.row(i);
    const std::int32_t* lo = r.rank.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) {
        continue;
      }
      const std::int32_t m = std::min(hi[j], lo[j]);
      const std::int32_t e = std::abs(hi[j] - lo[j]);
      ++out.h(static_cast<std::size_t>(m - 1), static_cast<std::size_t>(e));
    }
  }
  return out;
}

}  // namespace corank
