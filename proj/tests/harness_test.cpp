#include "rankeval/harness.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "rankeval/metrics.hpp"
#include "test_util.hpp"

namespace rankeval {
namespace {

Corpus label_feature_corpus(std::uint64_t seed, std::size_t queries, std::size_t max_docs) {
  std::mt19937_64 rng(seed);
  std::vector<QueryDocs> qs;
  for (std::size_t i = 0; i < queries; ++i) {
    const auto labels = testing::random_labels(rng, 1 + rng() % max_docs, 4);
    auto q = testing::make_query("q" + std::to_string(i), labels);
    for (auto& d : q.docs) d.features = {{1, static_cast<double>(d.label)}, {2, static_cast<double>(rng() % 7)}};
    qs.push_back(std::move(q));
  }
  return Corpus(GradeScale(4), std::move(qs));
}

TEST(RankerPolicy, ParseAndDescribe) {
  EXPECT_EQ(RankerPolicy::parse("ideal").kind, RankerPolicy::Kind::Ideal);
  EXPECT_EQ(RankerPolicy::parse("worst").kind, RankerPolicy::Kind::Worst);
  const auto r = RankerPolicy::parse("random:17");
  EXPECT_EQ(r.kind, RankerPolicy::Kind::Random);
  EXPECT_EQ(r.seed, 17u);
  const auto f = RankerPolicy::parse("feature:3");
  EXPECT_EQ(f.feature_id, 3u);
  EXPECT_EQ(f.describe(), "feature:3");
  for (const std::string bad : {"feature:0", "feature", "random:x", "best", "ideal:1", "feature:-2"}) {
    EXPECT_THROW(RankerPolicy::parse(bad), std::invalid_argument) << bad;
  }
}

TEST(GenerateRun, IdealMaximizesDcgByEnumeration) {
  const auto corpus = label_feature_corpus(1, 30, 7);
  RankerConfig cfg;
  const auto run = generate_run(corpus, cfg);
  ASSERT_EQ(run.size(), corpus.size());
  for (const auto& q : corpus.queries()) {
    const auto& r = run.at(q.qid);
    const double got = dcg_at_k(r, q, static_cast<int>(q.docs.size())).value;
    double best = 0.0;
    testing::for_each_permutation(q.docs.size(), [&](const std::vector<std::size_t>& order) {
      best = std::max(best, dcg_at_k(Ranking{q.qid, order}, q, static_cast<int>(q.docs.size())).value);
    });
    EXPECT_EQ(got, best);
  }
}

TEST(GenerateRun, RandomRunsAreByteIdentical) {
  const auto corpus = label_feature_corpus(2, 50, 20);
  RankerConfig cfg{RankerPolicy::parse("random:9"), "rnd"};
  std::ostringstream a, b, c;
  write_run(a, corpus, generate_run(corpus, cfg, 1), cfg.tag);
  write_run(b, corpus, generate_run(corpus, cfg, 4), cfg.tag);
  cfg.policy.seed = 10;
  write_run(c, corpus, generate_run(corpus, cfg, 1), cfg.tag);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_NE(a.str(), c.str());
}

TEST(GenerateRun, FeatureEqualToLabelMatchesIdeal) {
  const auto corpus = label_feature_corpus(3, 40, 15);
  const auto ideal = generate_run(corpus, {RankerPolicy::parse("ideal"), "i"});
  const auto feature = generate_run(corpus, {RankerPolicy::parse("feature:1"), "f"});
  for (const auto& [qid, r] : ideal) EXPECT_EQ(r.order, feature.at(qid).order);
}

TEST(GenerateRun, RoundTripsThroughTrecFormat) {
  const auto corpus = label_feature_corpus(4, 40, 25);
  for (const std::string policy : {"ideal", "worst", "random:5", "feature:2"}) {
    const auto run = generate_run(corpus, {RankerPolicy::parse(policy), "t"});
    std::ostringstream out;
    write_run(out, corpus, run, "t");
    std::istringstream in(out.str());
    EXPECT_EQ(rankings_from_trec(corpus, parse_trec_run(in)), run) << policy;
  }
}

}  // namespace
}  // namespace rankeval
