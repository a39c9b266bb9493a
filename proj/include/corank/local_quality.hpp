#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "corank/coranking.hpp"
#include "corank/measures.hpp"
#include "corank/parallel.hpp"
#include "corank/types.hpp"

namespace corank {

/// Per-point quality shares at fixed (kappa_s, kappa_t); the vector sums to
/// the raw-normalized overall quality at the same parameters.
struct LocalQualityVector {
  std::vector<double> values;
  int kappa_s = 1;
  int kappa_t = 1;
  ToleranceComparison tolerance_comparison = ToleranceComparison::strict;
};

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  bool operator==(const Rgb&) const = default;
};

enum class ColorScheme { grayscale, red_green };

namespace detail {

inline void check_local_params(std::size_t n, int kappa_s, int kappa_t) {
  const int limit = static_cast<int>(n) - 1;
  if (kappa_s < 1 || kappa_s > limit || kappa_t < 1 || kappa_t > limit) {
    throw std::invalid_argument(
        "pointwise quality: kappa_s and kappa_t must be in [1, N-1]");
  }
}

/// 1 when the pair is significant at kappa_s and its error passes kappa_t.
inline unsigned pair_accepted(std::int32_t high_rank, std::int32_t low_rank,
                              int kappa_s, int kappa_t,
                              ToleranceComparison cmp) {
  if (high_rank > kappa_s && low_rank > kappa_s) {
    return 0;
  }
  const std::int32_t err = std::abs(high_rank - low_rank);
  return (cmp == ToleranceComparison::strict ? err < kappa_t
                                             : err <= kappa_t)
             ? 1u
             : 0u;
}

}  // namespace detail

/// Symmetric per-point quality: each point collects the accepted terms of
/// both pair orientations, scaled by 1/(2 kappa_s N). A rank disturbance is
/// charged to both endpoints this way, not only to the point whose own
/// neighbor list changed.
inline LocalQualityVector pointwise_quality(const RankMatrix& rho,
                                            const RankMatrix& r, int kappa_s,
                                            int kappa_t,
                                            ToleranceComparison comparison) {
  detail::require_same_size(rho, r, "pointwise_quality");
  const std::size_t n = rho.size();
  detail::check_local_params(n, kappa_s, kappa_t);
  LocalQualityVector out{std::vector<double>(n, 0.0), kappa_s, kappa_t,
                         comparison};
  const double divisor =
      2.0 * static_cast<double>(kappa_s) * static_cast<double>(n);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      std::uint64_t accepted = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) {
          continue;
        }
        accepted += detail::pair_accepted(rho.rank(i, j), r.rank(i, j),
                                          kappa_s, kappa_t, comparison);
        accepted += detail::pair_accepted(rho.rank(j, i), r.rank(j, i),
                                          kappa_s, kappa_t, comparison);
      }
      out.values[i] = static_cast<double>(accepted) / divisor;
    }
  });
  return out;
}

/// One-sided diagnostic that only scans each point's own neighbor list,
/// scaled by 1/(kappa_s N). It misses errors that only show up in other
/// points' lists (swapping two outer neighbors of a middle point leaves the
/// middle point's own list intact), which is why the symmetric version above
/// is the measure of record.
inline LocalQualityVector pointwise_quality_naive(
    const RankMatrix& rho, const RankMatrix& r, int kappa_s, int kappa_t,
    ToleranceComparison comparison) {
  detail::require_same_size(rho, r, "pointwise_quality_naive");
  const std::size_t n = rho.size();
  detail::check_local_params(n, kappa_s, kappa_t);
  LocalQualityVector out{std::vector<double>(n, 0.0), kappa_s, kappa_t,
                         comparison};
  const double divisor = static_cast<double>(kappa_s) * static_cast<double>(n);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      std::uint64_t accepted = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) {
          continue;
        }
        accepted += detail::pair_accepted(rho.rank(i, j), r.rank(i, j),
                                          kappa_s, kappa_t, comparison);
      }
      out.values[i] = static_cast<double>(accepted) / divisor;
    }
  });
  return out;
}

namespace detail {

inline Rgb hsv_to_rgb(double hue_degrees) {
  // saturation = value = 1
  const double sector = hue_degrees / 60.0;
  const double x = 1.0 - std::abs(std::fmod(sector, 2.0) - 1.0);
  double rf = 0.0;
  double gf = 0.0;
  double bf = 0.0;
  if (sector < 1.0) {
    rf = 1.0;
    gf = x;
  } else if (sector < 2.0) {
    rf = x;
    gf = 1.0;
  } else {
    gf = 1.0;
    bf = x;
  }
  const auto byte = [](double v) {
    return static_cast<std::uint8_t>(std::lround(255.0 * v));
  };
  return Rgb{byte(rf), byte(gf), byte(bf)};
}

}  // namespace detail

/// Min-max normalizes the values and maps them to colors. A constant vector
/// normalizes to 1 everywhere. red_green sweeps hue 0 (worst, red) to 120
/// (best, green); grayscale maps to brightness.
inline std::vector<Rgb> colorize(const LocalQualityVector& quality,
                                 ColorScheme scheme) {
  const auto& values = quality.values;
  if (values.empty()) {
    throw std::invalid_argument("colorize: empty quality vector");
  }
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double span = *hi_it - lo;

  std::vector<Rgb> colors(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = span > 0.0 ? (values[i] - lo) / span : 1.0;
    if (scheme == ColorScheme::grayscale) {
      const auto g = static_cast<std::uint8_t>(std::lround(255.0 * v));
      colors[i] = Rgb{g, g, g};
    } else {
      colors[i] = detail::hsv_to_rgb(120.0 * v);
    }
  }
  return colors;
}

}  // namespace corank
