#include <cmath>
#include <cstdint>
#include <vector>

#include <gtest/gtest.h>

#include "corank/corank.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace corank;
using testutil::ranks_of;

namespace {

struct ReversedLine {
  RankMatrix rho;
  RankMatrix r;
  CoRankingMatrix q;
  MinErrHistogram hist;
};

ReversedLine reversed_line() {
  const auto [high, low] = testutil::reversed_line_points();
  ReversedLine out;
  out.rho = ranks_of(high);
  out.r = ranks_of(low);
  out.q = coranking_matrix(out.rho, out.r);
  out.hist = min_error_histogram(out.rho, out.r);
  return out;
}

}  // namespace

TEST(Qnx, ReversedLineCurve) {
  const QualityCurve curve = qnx_curve(reversed_line().q);
  EXPECT_NEAR(curve.at(1), 2.0 / 3.0, 1e-15);
  EXPECT_EQ(curve.at(2), 1.0);
}

TEST(Qnx, LastValueIsExactlyOne) {
  for (std::uint64_t seed : {1, 5, 9}) {
    const auto inst = testutil::random_instance(seed);
    const QualityCurve curve = qnx_curve(coranking_matrix(inst.rho, inst.r));
    EXPECT_EQ(curve.values.back(), 1.0);
    for (double v : curve.values) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

TEST(Qnx, PerfectMappingIsFlatOne) {
  const auto inst = testutil::random_instance(2);
  const QualityCurve curve = qnx_curve(coranking_matrix(inst.rho, inst.rho));
  for (double v : curve.values) {
    EXPECT_EQ(v, 1.0);
  }
}

TEST(Lcmc, ReversedLineValues) {
  const QualityCurve lcmc = lcmc_curve(qnx_curve(reversed_line().q));
  EXPECT_NEAR(lcmc.at(1), 1.0 / 6.0, 1e-15);
  EXPECT_EQ(lcmc.at(2), 0.0);
}

TEST(Lcmc, DefinitionHoldsEverywhere) {
  const auto inst = testutil::random_instance(3);
  const QualityCurve qnx = qnx_curve(coranking_matrix(inst.rho, inst.r));
  const QualityCurve lcmc = lcmc_curve(qnx);
  const auto n = static_cast<double>(inst.size());
  for (std::size_t K = 1; K < inst.size(); ++K) {
    EXPECT_EQ(lcmc.values[K - 1],
              qnx.values[K - 1] - static_cast<double>(K) / (n - 1.0));
  }
  EXPECT_EQ(lcmc.values.back(), 0.0);
}

TEST(Lcmc, RequiresQnxInput) {
  const QualityCurve lcmc = lcmc_curve(qnx_curve(reversed_line().q));
  EXPECT_THROW(lcmc_curve(lcmc), std::invalid_argument);
  EXPECT_THROW(split_summary(lcmc), std::invalid_argument);
}

TEST(Split, ReversedLineSummary) {
  const SplitSummary split = split_summary(qnx_curve(reversed_line().q));
  EXPECT_EQ(split.k_max, 1);
  EXPECT_NEAR(split.q_local, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(split.q_global, 5.0 / 6.0, 1e-15);
}

TEST(Split, PerfectMapping) {
  const auto inst = testutil::random_instance(4);
  const SplitSummary split =
      split_summary(qnx_curve(coranking_matrix(inst.rho, inst.rho)));
  EXPECT_EQ(split.k_max, 1);
  EXPECT_EQ(split.q_local, 1.0);
  EXPECT_EQ(split.q_global, 1.0);
}

TEST(Split, SummaryStaysInBounds) {
  for (std::uint64_t seed : {30, 31, 32}) {
    const auto inst = testutil::random_instance(seed);
    const SplitSummary split =
        split_summary(qnx_curve(coranking_matrix(inst.rho, inst.r)));
    EXPECT_GE(split.k_max, 1);
    EXPECT_LE(split.k_max, static_cast<int>(inst.size()) - 1);
    EXPECT_GE(split.q_local, 0.0);
    EXPECT_LE(split.q_local, 1.0);
    EXPECT_GE(split.q_global, 0.0);
    EXPECT_LE(split.q_global, 1.0);
  }
}

TEST(Split, ConstantLcmcTieBreaksToSmallestK) {
  // qnx(K) = K/(N-1) makes LCMC identically zero
  const std::size_t n = 12;
  QualityCurve qnx{CurveKind::qnx, n, std::vector<double>(n - 1)};
  for (std::size_t K = 1; K < n; ++K) {
    qnx.values[K - 1] = static_cast<double>(K) / static_cast<double>(n - 1);
  }
  EXPECT_EQ(split_summary(qnx).k_max, 1);
}

TEST(WeightedForm, ReversedLineValues) {
  const ReversedLine fixture = reversed_line();
  EXPECT_NEAR(qnx_via_weights(fixture.rho, fixture.r, 1), 2.0 / 3.0, 1e-15);
  EXPECT_EQ(qnx_via_weights(fixture.rho, fixture.r, 2), 1.0);
}

TEST(WeightedForm, PerfectMappingIsOne) {
  const auto inst = testutil::random_instance(6);
  for (int K = 1; K < static_cast<int>(inst.size()); ++K) {
    EXPECT_EQ(qnx_via_weights(inst.rho, inst.rho, K), 1.0);
  }
}

TEST(WeightedForm, AgreesWithCorankingRouteExactly) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const auto inst = testutil::random_instance(seed);
    const CoRankingMatrix q = coranking_matrix(inst.rho, inst.r);
    const auto counts = qnx_pair_counts(q);
    const QualityCurve curve = qnx_curve(q);
    for (int K = 1; K < static_cast<int>(inst.size()); ++K) {
      EXPECT_EQ(qnx_weighted_count(inst.rho, inst.r, K),
                counts[static_cast<std::size_t>(K - 1)]);
      EXPECT_EQ(qnx_via_weights(inst.rho, inst.r, K), curve.at(K));
    }
  }
}

TEST(WeightedForm, RangeChecked) {
  const ReversedLine fixture = reversed_line();
  EXPECT_THROW(qnx_weighted_count(fixture.rho, fixture.r, 0),
               std::invalid_argument);
  EXPECT_THROW(qnx_weighted_count(fixture.rho, fixture.r, 3),
               std::invalid_argument);
}

TEST(QualityMapTest, ReversedLineRawStrict) {
  const QualityMap map = quality_map(reversed_line().hist, Normalization::raw,
                                     ToleranceComparison::strict);
  EXPECT_NEAR(map.at(2, 1), 2.0 / 3.0, 1e-15);
  EXPECT_EQ(map.at(2, 2), 1.0);
}

TEST(QualityMapTest, SwappedRowRegionHitsOneExactlyAtToleranceFive) {
  const MappingPair pair = gen_swapped_row(20);
  const MinErrHistogram hist =
      min_error_histogram(ranks_of(pair.high), ranks_of(pair.low));
  const QualityMap map =
      quality_map(hist, Normalization::region, ToleranceComparison::strict);
  for (int ks = 1; ks <= 19; ++ks) {
    for (int kt = 5; kt <= 19; ++kt) {
      EXPECT_EQ(map.at(ks, kt), 1.0) << "cell (" << ks << ", " << kt << ")";
    }
  }
  for (int ks = 5; ks <= 19; ++ks) {
    for (int kt = 1; kt <= 4; ++kt) {
      EXPECT_LT(map.at(ks, kt), 1.0) << "cell (" << ks << ", " << kt << ")";
    }
  }
}

TEST(QualityMapTest, MatchesBruteForceEverywhere) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto inst = testutil::random_instance(seed);
    const MinErrHistogram hist = min_error_histogram(inst.rho, inst.r);
    const int limit = static_cast<int>(inst.size()) - 1;
    for (ToleranceComparison cmp :
         {ToleranceComparison::strict, ToleranceComparison::inclusive}) {
      const Matrix<std::uint64_t> counts = accepted_pair_counts(hist, cmp);
      for (int ks = 1; ks <= limit; ++ks) {
        for (int kt = 1; kt <= limit; ++kt) {
          EXPECT_EQ(counts(static_cast<std::size_t>(ks - 1),
                           static_cast<std::size_t>(kt - 1)),
                    oracle::accepted_pairs(inst.rho, inst.r, ks, kt, cmp))
              << "seed " << seed << " cell (" << ks << ", " << kt << ")";
        }
      }
    }
    const auto regions = significant_pair_counts(hist);
    for (int ks = 1; ks <= limit; ++ks) {
      EXPECT_EQ(regions[static_cast<std::size_t>(ks - 1)],
                oracle::significant_pairs(inst.rho, inst.r, ks));
    }
  }
}

TEST(QualityMapTest, RegionModeStaysInUnitIntervalAndFlagsExactness) {
  const auto inst = testutil::random_instance(7);
  const MinErrHistogram hist = min_error_histogram(inst.rho, inst.r);
  const QualityMap map =
      quality_map(hist, Normalization::region, ToleranceComparison::strict);
  const int limit = static_cast<int>(inst.size()) - 1;
  for (int ks = 1; ks <= limit; ++ks) {
    for (int kt = 1; kt <= limit; ++kt) {
      const double v = map.at(ks, kt);
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
      const std::uint64_t accepted = oracle::accepted_pairs(
          inst.rho, inst.r, ks, kt, ToleranceComparison::strict);
      const std::uint64_t region =
          oracle::significant_pairs(inst.rho, inst.r, ks);
      EXPECT_EQ(v == 1.0, accepted == region);
    }
  }
}

TEST(QualityMapTest, RawAtFullToleranceIsTwoMinusQnx) {
  const auto inst = testutil::random_instance(8);
  const MinErrHistogram hist = min_error_histogram(inst.rho, inst.r);
  const QualityMap map =
      quality_map(hist, Normalization::raw, ToleranceComparison::strict);
  const QualityCurve qnx = qnx_curve(coranking_matrix(inst.rho, inst.r));
  const int limit = static_cast<int>(inst.size()) - 1;
  for (int ks = 1; ks <= limit; ++ks) {
    EXPECT_NEAR(map.at(ks, limit), 2.0 - qnx.at(ks), 1e-12);
  }
}

TEST(QualityMapTest, NondecreasingInTolerance) {
  const auto inst = testutil::random_instance(9);
  const MinErrHistogram hist = min_error_histogram(inst.rho, inst.r);
  const int limit = static_cast<int>(inst.size()) - 1;
  for (Normalization norm : {Normalization::raw, Normalization::region}) {
    for (ToleranceComparison cmp :
         {ToleranceComparison::strict, ToleranceComparison::inclusive}) {
      const QualityMap map = quality_map(hist, norm, cmp);
      for (int ks = 1; ks <= limit; ++ks) {
        for (int kt = 2; kt <= limit; ++kt) {
          EXPECT_GE(map.at(ks, kt), map.at(ks, kt - 1));
        }
      }
    }
  }
}

TEST(Baseline, IdentityPermutationReproducesQualityMap) {
  const auto inst = testutil::random_instance(12);
  const DistanceMatrix low_d = euclidean_distances(inst.low);
  std::vector<std::vector<std::uint32_t>> identity(1);
  identity[0].resize(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) {
    identity[0][i] = static_cast<std::uint32_t>(i);
  }
  const QualityMap base =
      permutation_baseline(inst.rho, low_d, identity, Normalization::region,
                           ToleranceComparison::strict);
  const QualityMap direct =
      quality_map(min_error_histogram(inst.rho, inst.r), Normalization::region,
                  ToleranceComparison::strict);
  EXPECT_EQ(base.values, direct.values);
}

TEST(Baseline, DeterministicInSeed) {
  const auto inst = testutil::random_instance(13);
  const DistanceMatrix low_d = euclidean_distances(inst.low);
  const BaselineSpec spec{8, 424242};
  const QualityMap a = random_baseline(inst.rho, low_d, spec,
                                       Normalization::region,
                                       ToleranceComparison::strict);
  const QualityMap b = random_baseline(inst.rho, low_d, spec,
                                       Normalization::region,
                                       ToleranceComparison::strict);
  EXPECT_EQ(a.values, b.values);

  const QualityMap c = random_baseline(inst.rho, low_d, BaselineSpec{8, 7},
                                       Normalization::region,
                                       ToleranceComparison::strict);
  EXPECT_NE(c.values, a.values);
}

TEST(Baseline, RegionValueAtFullToleranceIsExactlyOne) {
  const PointSet high = gen_random_points(100, 3, 51);
  const PointSet low = gen_random_points(100, 2, 52);
  const RankMatrix rho = ranks_of(high);
  const DistanceMatrix low_d = euclidean_distances(low);
  const QualityMap base = random_baseline(rho, low_d, BaselineSpec{50, 99},
                                          Normalization::region,
                                          ToleranceComparison::strict);
  EXPECT_EQ(base.at(10, 99), 1.0);
}

TEST(Baseline, RejectsBadArguments) {
  const auto inst = testutil::random_instance(14);
  const DistanceMatrix low_d = euclidean_distances(inst.low);
  EXPECT_THROW(random_baseline(inst.rho, low_d, BaselineSpec{0, 1},
                               Normalization::region,
                               ToleranceComparison::strict),
               std::invalid_argument);
}

TEST(ScalarSummary, IdenticalMapsGiveZero) {
  const auto inst = testutil::random_instance(15);
  const QualityMap map =
      quality_map(min_error_histogram(inst.rho, inst.r), Normalization::region,
                  ToleranceComparison::strict);
  EXPECT_EQ(scalar_summary(map, map), 0.0);
}

TEST(ScalarSummary, PerfectMappingAboveWeakBaselineIsOne) {
  const auto inst = testutil::random_instance(16);
  const QualityMap perfect =
      quality_map(min_error_histogram(inst.rho, inst.rho),
                  Normalization::region, ToleranceComparison::strict);
  const DistanceMatrix low_d = euclidean_distances(inst.low);
  const QualityMap baseline = random_baseline(
      inst.rho, low_d, BaselineSpec{4, 3}, Normalization::region,
      ToleranceComparison::strict);
  double baseline_min = 1.0;
  for (double v : baseline.values.data()) {
    baseline_min = std::min(baseline_min, v);
  }
  ASSERT_LT(baseline_min, 1.0);  // a random relabeling scores below perfect
  EXPECT_EQ(scalar_summary(perfect, baseline), 1.0);
}

TEST(ScalarSummary, ZeroBaselineAveragesWholeGrid) {
  const ReversedLine fixture = reversed_line();
  const QualityMap map = quality_map(fixture.hist, Normalization::raw,
                                     ToleranceComparison::strict);
  QualityMap zero = map;
  for (double& v : zero.values.data()) {
    v = 0.0;
  }
  double sum = 0.0;
  for (double v : map.values.data()) {
    sum += v;
  }
  const double mean = sum / static_cast<double>(map.values.data().size());
  EXPECT_NEAR(scalar_summary(map, zero), mean, 1e-15);
}

TEST(ScalarSummary, RejectsShapeOrModeMismatch) {
  const ReversedLine fixture = reversed_line();
  const QualityMap raw = quality_map(fixture.hist, Normalization::raw,
                                     ToleranceComparison::strict);
  const QualityMap region = quality_map(fixture.hist, Normalization::region,
                                        ToleranceComparison::strict);
  EXPECT_THROW(scalar_summary(raw, region), input_error);
}

TEST(CenteredMap, SubtractsCellwise) {
  const ReversedLine fixture = reversed_line();
  const QualityMap map = quality_map(fixture.hist, Normalization::region,
                                     ToleranceComparison::strict);
  const QualityMap centered = centered_map(map, map);
  for (double v : centered.values.data()) {
    EXPECT_EQ(v, 0.0);
  }
}
