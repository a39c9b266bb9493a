#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include "corank/rng.hpp"
#include "corank/types.hpp"

namespace corank {

/// A high-dimensional point set together with its embedding.
struct MappingPair {
  PointSet high;
  PointSet low;
  std::string description;
};

/// Equidistant points on a line whose embedding swaps each adjacent pair
/// (p2, p1, p4, p3, ...). Every rank disturbance of this mapping is a local
/// swap, so rank errors never exceed 4.
inline MappingPair gen_swapped_row(int n) {
  if (n < 2 || n % 2 != 0) {
    throw input_error("gen_swapped_row: n must be even and >= 2, got " +
                      std::to_string(n));
  }
  const auto count = static_cast<std::size_t>(n);
  MappingPair pair{PointSet{Matrix<double>(count, 1)},
                   PointSet{Matrix<double>(count, 1)},
                   "equidistant line with adjacent pairs swapped (n=" +
                       std::to_string(n) + ")"};
  for (std::size_t i = 0; i < count; ++i) {
    pair.high.coords(i, 0) = static_cast<double>(i);
    pair.low.coords(i, 0) = static_cast<double>(i ^ 1U);
  }
  return pair;
}

/// Arc length of the spiral (t cos t, t sin t) from 0 to t.
inline double spiral_arc_length(double t) {
  return 0.5 * (t * std::sqrt(1.0 + t * t) + std::asinh(t));
}

namespace detail {

/// Inverse of spiral_arc_length on [t_lo, t_hi] by bisection; the arc length
/// is strictly increasing, so 80 halvings pin t to full precision.
inline double invert_arc_length(double target, double t_lo, double t_hi) {
  for (int iter = 0; iter < 80; ++iter) {
    const double mid = 0.5 * (t_lo + t_hi);
    if (spiral_arc_length(mid) < target) {
      t_lo = mid;
    } else {
      t_hi = mid;
    }
  }
  return 0.5 * (t_lo + t_hi);
}

}  // namespace detail

/// Swiss roll sampled uniformly by surface area: the spiral parameter t is
/// drawn by inverse-CDF on arc length (density proportional to sqrt(1+t^2)),
/// the height uniformly. high = (t cos t, h, t sin t); low = the unrolled
/// ground truth (s(t), h), an isometry of the manifold.
inline MappingPair gen_swiss_roll(int n, std::uint64_t seed,
                                  double t_min = 1.5 * std::numbers::pi,
                                  double t_max = 4.5 * std::numbers::pi,
                                  double height = 21.0) {
  if (n < 2) {
    throw input_error("gen_swiss_roll: n must be >= 2");
  }
  if (!(t_max > t_min) || !(t_min > 0.0) || !(height > 0.0)) {
    throw input_error(
        "gen_swiss_roll: need t_max > t_min > 0 and height > 0");
  }
  const auto count = static_cast<std::size_t>(n);
  MappingPair pair{PointSet{Matrix<double>(count, 3)},
                   PointSet{Matrix<double>(count, 2)},
                   "swiss roll with unrolled ground truth (n=" +
                       std::to_string(n) + ")"};
  const double s_lo = spiral_arc_length(t_min);
  const double s_hi = spiral_arc_length(t_max);
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const double s = s_lo + rng.next_unit() * (s_hi - s_lo);
    const double t = detail::invert_arc_length(s, t_min, t_max);
    const double h = rng.next_unit() * height;
    pair.high.coords(i, 0) = t * std::cos(t);
    pair.high.coords(i, 1) = h;
    pair.high.coords(i, 2) = t * std::sin(t);
    pair.low.coords(i, 0) = spiral_arc_length(t);
    pair.low.coords(i, 1) = h;
  }
  return pair;
}

/// Seeded uniform points in the unit cube.
inline PointSet gen_random_points(int n, int d, std::uint64_t seed) {
  if (n < 2 || d < 1) {
    throw input_error("gen_random_points: need n >= 2 and d >= 1");
  }
  PointSet points{Matrix<double>(static_cast<std::size_t>(n),
                                 static_cast<std::size_t>(d))};
  Rng rng(seed);
  for (double& v : points.coords.data()) {
    v = rng.next_unit();
  }
  return points;
}

}  // namespace corank
