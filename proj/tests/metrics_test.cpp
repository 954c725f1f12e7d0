#include "rankeval/metrics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_util.hpp"

namespace rankeval {
namespace {

using testing::make_query;

Ranking identity(const QueryDocs& q) {
  Ranking r{q.qid, {}};
  for (std::size_t i = 0; i < q.docs.size(); ++i) r.order.push_back(i);
  return r;
}

// Frozen values below were computed offline in double precision with an
// independent implementation.
constexpr double kDcg32 = 8.892789260714373;     // labels [3,2], k=2, b=2
constexpr double kNdcg23 = 0.8339912323981488;   // [2,3] against ideal [3,2]

TEST(Dcg, Examples) {
  const std::vector<int> ranked{3, 2};
  EXPECT_NEAR(dcg(ranked, 2, 2.0), kDcg32, 1e-12);
  const std::vector<int> zeros{0, 0, 0};
  EXPECT_EQ(dcg(zeros, 3, 2.0), 0.0);
  const auto single = make_query("q", {1});
  const auto v = dcg_at_k(identity(single), single, 5);
  EXPECT_EQ(v.value, 1.0);
  EXPECT_EQ(v.effective_k, 1);
}

TEST(Dcg, DiscountBase) {
  EXPECT_EQ(position_discount(1, 2.0), 1.0);
  EXPECT_NEAR(position_discount(3, 10.0), 1.0 / std::log10(4.0), 1e-15);
  const std::vector<int> ranked{1, 1};
  EXPECT_NEAR(dcg(ranked, 2, std::exp(1.0)), 1.0 / std::log(2.0) + 1.0 / std::log(3.0), 1e-12);
}

TEST(Ndcg, Examples) {
  const auto q = make_query("q", {2, 3});
  EXPECT_NEAR(ndcg_at_k(identity(q), q, 2).value, kNdcg23, 1e-12);
  EXPECT_EQ(ndcg_at_k(ideal_ranking(q), q, 2).value, 1.0);
  const auto zeros = make_query("z", {0, 0});
  EXPECT_EQ(ndcg_at_k(identity(zeros), zeros, 2).value, 0.0);
}

TEST(SumPrecision, Examples) {
  const std::vector<int> ranked{1, 0, 1};
  EXPECT_NEAR(sum_precision(ranked, 3, 0), 1.0 + 2.0 / 3.0, 1e-15);
  const std::vector<int> none{0, 0, 0};
  EXPECT_EQ(sum_precision(none, 3, 0), 0.0);
  const std::vector<int> all{1, 1, 1, 1};
  EXPECT_EQ(sum_precision(all, 4, 0), 4.0);
  // Graded labels with a threshold: only label > threshold counts.
  const std::vector<int> graded{2, 1, 2};
  EXPECT_NEAR(sum_precision(graded, 3, 1), 1.0 + 2.0 / 3.0, 1e-15);
}

TEST(Ap, Examples) {
  const auto q = make_query("q", {1, 0, 1});
  EXPECT_NEAR(ap_at_k(identity(q), q, 3).value, 5.0 / 9.0, 1e-15);
  const auto none = make_query("n", {0, 0, 0});
  EXPECT_EQ(ap_at_k(identity(none), none, 3).value, 0.0);
  const auto all = make_query("a", {1, 1, 1, 1});
  EXPECT_EQ(ap_at_k(identity(all), all, 4).value, 1.0);
}

TEST(Err, ProbabilityMap) {
  EXPECT_EQ(err_probability(0, 4), 0.0);
  EXPECT_EQ(err_probability(4, 4), 0.9375);
  EXPECT_EQ(err_probability(1, 2), 0.25);
  EXPECT_EQ(err_probability(1, GradeScale(1), ErrGainMap::LabelAsValue), 1.0);
}

TEST(Err, Examples) {
  const GradeScale scale(4);
  const std::vector<int> one{4};
  EXPECT_EQ(err(one, 1, scale), 0.9375);
  const std::vector<int> zeros{0, 0};
  EXPECT_EQ(err(zeros, 2, scale), 0.0);
  const std::vector<int> ranked{4, 0};
  EXPECT_EQ(err(ranked, 2, scale), 0.9375);
  const std::vector<int> reversed{0, 4};
  EXPECT_EQ(err(reversed, 2, scale), 0.46875);
}

TEST(Nerr, Examples) {
  const GradeScale scale(4);
  const auto q = make_query("q", {0, 4});
  EXPECT_EQ(nerr_at_k(ideal_ranking(q), q, 2, scale).value, 1.0);
  EXPECT_EQ(nerr_at_k(identity(q), q, 2, scale).value, 0.5);
  const auto zeros = make_query("z", {0, 0});
  EXPECT_EQ(nerr_at_k(identity(zeros), zeros, 2, scale).value, 0.0);
}

TEST(MetricSpec, Validation) {
  MetricSpec spec;
  EXPECT_NO_THROW(spec.validate());
  spec.k = 0;
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec = {};
  spec.log_base = 1.0;
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec = {};
  spec.scale = GradeScale(4);
  spec.err_map = ErrGainMap::LabelAsValue;
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec = {};
  spec.threshold = 5;
  EXPECT_THROW(spec.validate(), std::invalid_argument);
}

TEST(AggregateMean, Examples) {
  const std::vector<double> a{0.2, 0.4};
  EXPECT_NEAR(aggregate_mean(a), 0.3, 1e-15);
  const std::vector<double> b{0.7};
  EXPECT_EQ(aggregate_mean(b), 0.7);
  const std::vector<double> c{0.0, 0.0, 1.0};
  EXPECT_NEAR(aggregate_mean(c), 1.0 / 3.0, 1e-15);
  EXPECT_THROW(aggregate_mean(std::span<const double>{}), std::invalid_argument);
  EXPECT_NEAR(aggregate_mean(c, {false, true, false}, true), 0.5, 1e-15);
  EXPECT_NEAR(aggregate_mean(c, {false, true, false}, false), 1.0 / 3.0, 1e-15);
}

TEST(MetricProperties, MonotoneInKAndBounded) {
  std::mt19937_64 rng(17);
  const GradeScale scale(4);
  for (int trial = 0; trial < 300; ++trial) {
    const auto q = make_query("q", testing::random_labels(rng, 1 + rng() % 15, 4));
    const auto r = random_ranking(q, rng());
    const auto labels = ranked_labels(r, q);
    double prev_dcg = 0.0, prev_err = 0.0;
    for (int k = 1; k <= 20; ++k) {
      const double d = dcg(labels, k, 2.0);
      const double e = err(labels, k, scale);
      EXPECT_GE(d, prev_dcg);
      EXPECT_GE(e, prev_err);
      EXPECT_LT(e, 1.0);
      prev_dcg = d;
      prev_err = e;
      const double nd = ndcg_at_k(r, q, k).value;
      const double ne = nerr_at_k(r, q, k, scale).value;
      EXPECT_GE(nd, 0.0);
      EXPECT_LE(nd, 1.0);
      EXPECT_GE(ne, 0.0);
      EXPECT_LE(ne, 1.0);
      const auto ap = ap_at_k(r, q, k);
      EXPECT_GE(ap.value, 0.0);
      EXPECT_LE(ap.value, 1.0);
      EXPECT_LE(sp_at_k(r, q, k).value, std::min<double>(k, static_cast<double>(q.docs.size())));
    }
  }
}

TEST(MetricProperties, NormalizedOneExactlyOnIdealEquivalentRankings) {
  std::mt19937_64 rng(29);
  const GradeScale scale(4);
  for (int trial = 0; trial < 40; ++trial) {
    const auto q = make_query("q", testing::random_labels(rng, 1 + rng() % 7, 4));
    const auto ideal_labels = ranked_labels(ideal_ranking(q), q);
    const bool any_relevant = ideal_labels.front() > 0;
    for (int k = 1; k <= static_cast<int>(q.docs.size()); ++k) {
      testing::for_each_permutation(q.docs.size(), [&](const std::vector<std::size_t>& order) {
        const Ranking r{q.qid, order};
        const auto labels = ranked_labels(r, q);
        const bool equivalent = std::equal(labels.begin(), labels.begin() + k, ideal_labels.begin());
        const double nd = ndcg_at_k(r, q, k).value;
        const double ne = nerr_at_k(r, q, k, scale).value;
        if (!any_relevant) {
          EXPECT_EQ(nd, 0.0);
          EXPECT_EQ(ne, 0.0);
        } else if (equivalent) {
          EXPECT_EQ(nd, 1.0);
          EXPECT_EQ(ne, 1.0);
        } else {
          EXPECT_LT(nd, 1.0);
          EXPECT_LT(ne, 1.0);
        }
      });
    }
  }
}

}  // namespace
}  // namespace rankeval
