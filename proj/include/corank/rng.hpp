#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace corank {

/// Seeded generator with fully specified output. std::mt19937_64 is pinned by
/// the standard, and the draws below avoid std::uniform_*_distribution and
/// std::shuffle, whose algorithms are implementation-defined. Identical seeds
/// therefore give identical streams on every platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random mantissa bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound), bound >= 1. Rejection keeps it unbiased.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t reject =
        std::numeric_limits<std::uint64_t>::max() % bound;
    // accept u < 2^64 - (2^64 mod bound)
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() - reject;
    for (;;) {
      const std::uint64_t u = next_u64();
      if (u < limit || reject + 1 == bound) {
        return u % bound;
      }
    }
  }

  /// Fisher-Yates shuffle using next_below.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  /// Uniformly random permutation of 0..n-1.
  std::vector<std::uint32_t> permutation(std::size_t n) {
    std::vector<std::uint32_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) {
      perm[i] = static_cast<std::uint32_t>(i);
    }
    shuffle(perm);
    return perm;
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace corank
