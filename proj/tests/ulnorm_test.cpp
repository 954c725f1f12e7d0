#include "rankeval/ulnorm.hpp"

#include <gtest/gtest.h>

#include <random>

#include "rankeval/bounds.hpp"
#include "test_util.hpp"

namespace rankeval {
namespace {

TEST(NormalizeUpper, Examples) {
  EXPECT_EQ(normalize_upper(0.5, 1.0).value, 0.5);
  EXPECT_EQ(normalize_upper(0.7, 0.7).value, 1.0);
  const auto d = normalize_upper(0.0, 0.0);
  EXPECT_EQ(d.value, 0.0);
  EXPECT_TRUE(d.degenerate);
  EXPECT_EQ(normalize_upper(1.0 + 1e-12, 1.0).value, 1.0);  // clamped
  EXPECT_THROW(normalize_upper(1.1, 1.0), BoundViolation);
  EXPECT_THROW(normalize_upper(-0.1, 1.0), BoundViolation);
}

TEST(NormalizeUpper, ZeroIubIsDegenerate) {
  const auto d = normalize_upper(0.3, 0.0);
  EXPECT_EQ(d.value, 0.0);
  EXPECT_TRUE(d.degenerate);
  EXPECT_TRUE(normalize_v1(0.3, 0.0, 0.0).degenerate);
  EXPECT_TRUE(normalize_v2(0.3, 0.0, 0.0).degenerate);
}

TEST(NormalizeV1, Examples) {
  EXPECT_EQ(normalize_v1(0.5, 1.0, 0.5).value, 0.25);
  EXPECT_EQ(normalize_v1(1.0, 1.0, 0.0).value, 1.0);
  EXPECT_EQ(normalize_v1(0.0, 1.0, 0.4).value, 0.0);
  const auto d = normalize_v1(0.0, 1.0, 0.0);
  EXPECT_EQ(d.value, 0.0);
  EXPECT_TRUE(d.degenerate);
  EXPECT_TRUE(normalize_v1(0.0, 0.0, 0.0).degenerate);
}

TEST(NormalizeV2, Examples) {
  EXPECT_NEAR(normalize_v2(0.8, 1.0, 0.5).value, 0.6, 1e-15);
  EXPECT_EQ(normalize_v2(0.5, 1.0, 0.5).value, 0.0);
  EXPECT_EQ(normalize_v2(1.0, 1.0, 0.5).value, 1.0);
  EXPECT_EQ(normalize_v2(0.0, 1.0, 0.5).value, -1.0);
  const auto d = normalize_v2(0.3, 0.3, 0.3);
  EXPECT_EQ(d.value, 0.0);
  EXPECT_TRUE(d.degenerate);
  EXPECT_THROW(normalize_v2(0.5, 1.0, 1.5), BoundViolation);
}

TEST(Normalize, Dispatch) {
  EXPECT_EQ(normalize(NormVariant::None, 3.0, 5.0, 1.0).value, 3.0);
  EXPECT_EQ(normalize(NormVariant::Upper, 0.5, 1.0, 0.0).value, 0.5);
  EXPECT_EQ(normalize(NormVariant::V1, 0.5, 1.0, 0.5).value, 0.25);
  EXPECT_EQ(normalize(NormVariant::V2, 0.0, 1.0, 0.5).variant, NormVariant::V2);
}

TEST(NormalizeProperties, RangesOnRandomTriples) {
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double iub = 10.0 * u(rng);
    const double rlb = iub * u(rng);
    const double a = iub * u(rng);
    const double v1 = normalize_v1(a, iub, rlb).value;
    const double v2 = normalize_v2(a, iub, rlb).value;
    EXPECT_GE(v1, 0.0);
    EXPECT_LE(v1, 1.0);
    EXPECT_GE(v2, -1.0);
    EXPECT_LE(v2, 1.0);
  }
}

TEST(NormalizeProperties, V2MonotoneAndContinuous) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double iub = 0.1 + u(rng);
    const double rlb = iub * (0.05 + 0.9 * u(rng));
    double prev = -2.0;
    for (int s = 0; s <= 100; ++s) {
      const double v = normalize_v2(iub * s / 100.0, iub, rlb).value;
      EXPECT_GE(v, prev);
      prev = v;
    }
    EXPECT_EQ(normalize_v2(rlb, iub, rlb).value, 0.0);
    EXPECT_NEAR(normalize_v2(rlb * (1 + 1e-9), iub, rlb).value, 0.0, 1e-7);
    EXPECT_NEAR(normalize_v2(rlb * (1 - 1e-9), iub, rlb).value, 0.0, 1e-7);
  }
}

TEST(NormalizeProperties, V2OfIdealIsOneUnderExhaustiveBounds) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const auto q = testing::make_query("q", testing::random_labels(rng, 1 + rng() % 7, 4));
    for (auto kind : {MetricKind::Dcg, MetricKind::Sp, MetricKind::Err}) {
      MetricSpec spec;
      spec.kind = kind;
      spec.k = 1 + static_cast<int>(rng() % 7);
      spec.scale = GradeScale(4);
      const double top = iub(spec, q);
      const double rlb = rlb_exhaustive(spec, q);
      const auto ideal = evaluate(spec, ranked_labels(ideal_ranking(q), q)).value;
      const auto v2 = normalize_v2(ideal, top, rlb);
      if (top - rlb > kBoundSlack * std::max(1.0, top)) {
        EXPECT_EQ(v2.value, 1.0);
      } else {
        EXPECT_TRUE(v2.degenerate);
      }
    }
  }
}

TEST(NormalizeProperties, V2PermutationMeanStaysInRange) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 40; ++trial) {
    const auto labels = testing::random_labels(rng, 2 + rng() % 5, 4);
    const auto q = testing::make_query("q", labels);
    MetricSpec spec;
    spec.k = 1 + static_cast<int>(rng() % 5);
    spec.scale = GradeScale(4);
    const double top = iub(spec, q);
    const double rlb = rlb_exhaustive(spec, q);
    const double mean = testing::permutation_mean(labels, [&](const std::vector<int>& r) {
      return normalize_v2(std::min(dcg(r, spec.k, 2.0), top), top, rlb).value;
    });
    EXPECT_GE(mean, -1.0);
    EXPECT_LE(mean, 1.0);
  }
}

}  // namespace
}  // namespace rankeval
