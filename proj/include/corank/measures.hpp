#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <string>
#include <vector>

#include "corank/coranking.hpp"
#include "corank/ranking.hpp"
#include "corank/rng.hpp"
#include "corank/types.hpp"

namespace corank {

enum class CurveKind { qnx, lcmc };

/// Quality value per neighborhood size K = 1..N-1 (values[K-1]).
struct QualityCurve {
  CurveKind kind = CurveKind::qnx;
  std::size_t points = 0;
  std::vector<double> values;

  double at(int K) const { return values[static_cast<std::size_t>(K - 1)]; }
};

struct SplitSummary {
  int k_max = 1;
  double q_local = 0.0;
  double q_global = 0.0;
};

enum class Normalization { raw, region };
enum class ToleranceComparison { strict, inclusive };

/// Quality over the full (kappa_s, kappa_t) grid; values(ks-1, kt-1).
/// kappa_s bounds the significant min rank, kappa_t the tolerated rank
/// error. Under `raw` the divisor is kappa_s * N, under `region` it is the
/// exact number of significant pairs, which keeps values in [0, 1].
struct QualityMap {
  std::size_t points = 0;
  Normalization normalization = Normalization::region;
  ToleranceComparison tolerance_comparison = ToleranceComparison::strict;
  Matrix<double> values;

  double at(int kappa_s, int kappa_t) const {
    return values(static_cast<std::size_t>(kappa_s - 1),
                  static_cast<std::size_t>(kappa_t - 1));
  }
};

/// Monte Carlo baseline: M seeded random permutations of the embedding.
struct BaselineSpec {
  std::uint32_t samples = 1;
  std::uint64_t seed = 0;
};

/// Number of pairs with both ranks <= K, for every K, through 2-D prefix
/// sums of the co-ranking matrix.
inline std::vector<std::uint64_t> qnx_pair_counts(const CoRankingMatrix& q) {
  const std::size_t n = q.points;
  std::vector<std::uint64_t> counts(n - 1, 0);
  std::vector<std::uint64_t> column_cum(n - 1, 0);  // sums over rows <= K
  std::uint64_t total = 0;
  for (std::size_t row = 0; row < n - 1; ++row) {
    const std::uint32_t* cells = q.q.row(row);
    for (std::size_t col = 0; col < n - 1; ++col) {
      column_cum[col] += cells[col];
    }
    std::uint64_t row_prefix = 0;
    for (std::size_t col = 0; col <= row; ++col) {
      row_prefix += cells[col];
    }
    // block grows by row K plus column K, minus the double-counted corner
    total += row_prefix + column_cum[row] - cells[row];
    counts[row] = total;
  }
  return counts;
}

inline QualityCurve qnx_curve(const CoRankingMatrix& q) {
  const std::size_t n = q.points;
  const auto counts = qnx_pair_counts(q);
  QualityCurve curve{CurveKind::qnx, n, std::vector<double>(n - 1, 0.0)};
  for (std::size_t K = 1; K < n; ++K) {
    curve.values[K - 1] = static_cast<double>(counts[K - 1]) /
                          (static_cast<double>(K) * static_cast<double>(n));
  }
  return curve;
}

/// Q_NX minus the K/(N-1) level of a random mapping.
inline QualityCurve lcmc_curve(const QualityCurve& qnx) {
  if (qnx.kind != CurveKind::qnx) {
    throw std::invalid_argument("lcmc_curve: input must be a qnx curve");
  }
  const std::size_t n = qnx.points;
  QualityCurve curve{CurveKind::lcmc, n, std::vector<double>(n - 1, 0.0)};
  for (std::size_t K = 1; K < n; ++K) {
    curve.values[K - 1] =
        qnx.values[K - 1] - static_cast<double>(K) / static_cast<double>(n - 1);
  }
  return curve;
}

/// K_max is the smallest K maximizing LCMC; the curve averages on both sides
/// of the split include K_max itself.
inline SplitSummary split_summary(const QualityCurve& qnx) {
  if (qnx.kind != CurveKind::qnx) {
    throw std::invalid_argument("split_summary: input must be a qnx curve");
  }
  const std::size_t n = qnx.points;
  const QualityCurve lcmc = lcmc_curve(qnx);
  std::size_t best = 0;
  for (std::size_t idx = 1; idx < lcmc.values.size(); ++idx) {
    if (lcmc.values[idx] > lcmc.values[best]) {
      best = idx;
    }
  }
  const std::size_t k_max = best + 1;

  double local = 0.0;
  for (std::size_t K = 1; K <= k_max; ++K) {
    local += qnx.values[K - 1];
  }
  double global = 0.0;
  for (std::size_t K = k_max; K < n; ++K) {
    global += qnx.values[K - 1];
  }
  SplitSummary out;
  out.k_max = static_cast<int>(k_max);
  out.q_local = local / static_cast<double>(k_max);
  out.q_global = global / static_cast<double>(n - k_max);
  return out;
}

/// Literal evaluation of the significance/tolerance product form of Q_NX:
/// a pair counts when at least one rank is <= K (significant) and not
/// exactly one rank is <= K (tolerated). This is the weighted-sum route; it
/// must agree with qnx_pair_counts pair for pair.
inline std::uint64_t qnx_weighted_count(const RankMatrix& rho,
                                        const RankMatrix& r, int K) {
  detail::require_same_size(rho, r, "qnx_weighted_count");
  const std::size_t n = rho.size();
  if (K < 1 || static_cast<std::size_t>(K) > n - 1) {
    throw std::invalid_argument("qnx_weighted_count: K must be in [1, N-1]");
  }
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::int32_t* hi = rho.rank.row(i);
    const std::int32_t* lo = r.rank.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) {
        continue;
      }
      const bool hi_in = hi[j] <= K;
      const bool lo_in = lo[j] <= K;
      const unsigned significance = (!hi_in && !lo_in) ? 0u : 1u;
      const unsigned tolerance = (hi_in != lo_in) ? 0u : 1u;
      count += significance * tolerance;
    }
  }
  return count;
}

inline double qnx_via_weights(const RankMatrix& rho, const RankMatrix& r,
                              int K) {
  const std::uint64_t count = qnx_weighted_count(rho, r, K);
  return static_cast<double>(count) /
         (static_cast<double>(K) * static_cast<double>(rho.size()));
}

namespace detail {

/// Streams (kappa_s, kappa_t, accepted, region) over the whole grid in
/// O(N^2): `accepted` counts significant pairs whose error passes the
/// tolerance, `region` all significant pairs at kappa_s.
template <typename Sink>
void scan_quality_grid(const MinErrHistogram& hist, ToleranceComparison cmp,
                       Sink&& sink) {
  const std::size_t n = hist.points;
  const std::size_t grid = n - 1;
  std::vector<std::uint64_t> cum(grid, 0);  // cum[e]: pairs with m <= ks, err <= e
  for (std::size_t ks = 1; ks <= grid; ++ks) {
    const std::uint32_t* row = hist.h.row(ks - 1);
    std::uint64_t run = 0;
    for (std::size_t e = 0; e < grid; ++e) {
      run += row[e];
      cum[e] += run;
    }
    const std::uint64_t region = cum[grid - 1];
    for (std::size_t kt = 1; kt <= grid; ++kt) {
      const std::size_t stop =
          cmp == ToleranceComparison::strict ? kt - 1 : std::min(kt, grid - 1);
      sink(ks, kt, cum[stop], region);
    }
  }
}

}  // namespace detail

/// Integer core of the quality map: accepted-pair counts per grid cell.
inline Matrix<std::uint64_t> accepted_pair_counts(const MinErrHistogram& hist,
                                                  ToleranceComparison cmp) {
  const std::size_t grid = hist.points - 1;
  Matrix<std::uint64_t> counts(grid, grid, 0);
  detail::scan_quality_grid(hist, cmp,
                            [&](std::size_t ks, std::size_t kt,
                                std::uint64_t accepted, std::uint64_t) {
                              counts(ks - 1, kt - 1) = accepted;
                            });
  return counts;
}

/// Significant-pair count per kappa_s (the region-normalization divisor).
inline std::vector<std::uint64_t> significant_pair_counts(
    const MinErrHistogram& hist) {
  const std::size_t grid = hist.points - 1;
  std::vector<std::uint64_t> region(grid, 0);
  std::uint64_t running = 0;
  for (std::size_t ks = 1; ks <= grid; ++ks) {
    const std::uint32_t* row = hist.h.row(ks - 1);
    for (std::size_t e = 0; e < grid; ++e) {
      running += row[e];
    }
    region[ks - 1] = running;
  }
  return region;
}

inline QualityMap quality_map(const MinErrHistogram& hist,
                              Normalization normalization,
                              ToleranceComparison comparison) {
  const std::size_t n = hist.points;
  QualityMap map{n, normalization, comparison, Matrix<double>(n - 1, n - 1)};
  detail::scan_quality_grid(
      hist, comparison,
      [&](std::size_t ks, std::size_t kt, std::uint64_t accepted,
          std::uint64_t region) {
        const double divisor =
            normalization == Normalization::raw
                ? static_cast<double>(ks) * static_cast<double>(n)
                : static_cast<double>(region);
        map.values(ks - 1, kt - 1) = static_cast<double>(accepted) / divisor;
      });
  return map;
}

/// Quality map averaged over explicitly given permutations of the embedding
/// (the seeded overload feeds this one; tests can force the identity).
inline QualityMap permutation_baseline(
    const RankMatrix& high_ranks, const DistanceMatrix& low_distances,
    std::span<const std::vector<std::uint32_t>> permutations,
    Normalization normalization, ToleranceComparison comparison) {
  const std::size_t n = high_ranks.size();
  if (low_distances.size() != n) {
    throw input_error("permutation_baseline: size mismatch");
  }
  if (permutations.empty()) {
    throw std::invalid_argument("permutation_baseline: need at least 1 sample");
  }
  QualityMap acc{n, normalization, comparison, Matrix<double>(n - 1, n - 1, 0.0)};
  Matrix<double> permuted(n, n);
  for (const auto& perm : permutations) {
    if (perm.size() != n) {
      throw std::invalid_argument("permutation_baseline: bad permutation size");
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        permuted(i, j) = low_distances.d(perm[i], perm[j]);
      }
    }
    const RankMatrix shuffled_ranks = rank_matrix(DistanceMatrix{permuted});
    const QualityMap sample = quality_map(
        min_error_histogram(high_ranks, shuffled_ranks), normalization,
        comparison);
    for (std::size_t c = 0; c < acc.values.data().size(); ++c) {
      acc.values.data()[c] += sample.values.data()[c];
    }
  }
  const auto samples = static_cast<double>(permutations.size());
  for (double& v : acc.values.data()) {
    v /= samples;
  }
  return acc;
}

/// Average quality map of `spec.samples` random relabelings of the embedding
/// side. Reassigning positions by a permutation keeps the low-dimensional
/// geometry and randomizes only which data index sits where; ranks are
/// recomputed per sample. Deterministic in (samples, seed).
inline QualityMap random_baseline(const RankMatrix& high_ranks,
                                  const DistanceMatrix& low_distances,
                                  const BaselineSpec& spec,
                                  Normalization normalization,
                                  ToleranceComparison comparison) {
  if (spec.samples < 1) {
    throw std::invalid_argument("random_baseline: samples must be >= 1");
  }
  Rng rng(spec.seed);
  std::vector<std::vector<std::uint32_t>> permutations;
  permutations.reserve(spec.samples);
  for (std::uint32_t s = 0; s < spec.samples; ++s) {
    permutations.push_back(rng.permutation(high_ranks.size()));
  }
  return permutation_baseline(high_ranks, low_distances, permutations,
                              normalization, comparison);
}

namespace detail {

inline void require_same_grid(const QualityMap& a, const QualityMap& b,
                              const char* who) {
  if (a.points != b.points || a.normalization != b.normalization ||
      a.tolerance_comparison != b.tolerance_comparison) {
    throw input_error(std::string(who) +
                      ": maps must share grid shape and modes");
  }
}

}  // namespace detail

/// Mean of the map over the cells that beat the baseline; 0 when none does.
inline double scalar_summary(const QualityMap& map, const QualityMap& baseline) {
  detail::require_same_grid(map, baseline, "scalar_summary");
  double sum = 0.0;
  std::uint64_t cells = 0;
  for (std::size_t c = 0; c < map.values.data().size(); ++c) {
    const double value = map.values.data()[c];
    if (value - baseline.values.data()[c] > 0.0) {
      sum += value;
      ++cells;
    }
  }
  return cells == 0 ? 0.0 : sum / static_cast<double>(cells);
}

/// map - baseline, cell by cell.
inline QualityMap centered_map(const QualityMap& map,
                               const QualityMap& baseline) {
  detail::require_same_grid(map, baseline, "centered_map");
  QualityMap out = map;
  for (std::size_t c = 0; c < out.values.data().size(); ++c) {
    out.values.data()[c] -= baseline.values.data()[c];
  }
  return out;
}

}  // namespace corank
