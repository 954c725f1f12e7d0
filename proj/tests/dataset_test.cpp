#include "rankeval/dataset.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "test_util.hpp"

namespace rankeval {
namespace {

Corpus parse(const std::string& text, LetorOptions options = {}) {
  std::istringstream in(text);
  return parse_letor(in, options);
}

TEST(ParseLetor, SingleRowWithDocidComment) {
  const auto corpus = parse("2 qid:10 1:0.5 2:0.3 #docid = GX001\n");
  ASSERT_EQ(corpus.size(), 1u);
  const auto& q = corpus.queries()[0];
  EXPECT_EQ(q.qid, "10");
  ASSERT_EQ(q.docs.size(), 1u);
  EXPECT_EQ(q.docs[0].label, 2);
  EXPECT_EQ(q.docs[0].doc_id, "GX001");
  EXPECT_EQ(q.docs[0].features, (std::vector<FeatureValue>{{1, 0.5}, {2, 0.3}}));
  EXPECT_EQ(corpus.scale().max_grade(), 2);
}

TEST(ParseLetor, EmptyStreamGivesEmptyCorpus) {
  EXPECT_TRUE(parse("").empty());
  EXPECT_TRUE(parse("\n  \n").empty());
}

TEST(ParseLetor, NonIntegerLabelFailsAtLine) {
  try {
    parse("x qid:1 1:0.5\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
  }
}

TEST(ParseLetor, MalformedLinesReportTheirLineNumber) {
  const std::vector<std::pair<std::string, std::size_t>> cases{
      {"1 qid:1 1:0.5\n2 1:0.5\n", 2},          // missing qid
      {"1 qid:1 1:0.5\n\n1 qid: 1:2\n", 3},      // empty qid
      {"1 qid:1 1:abc\n", 1},                    // bad value
      {"1 qid:1 0:1.0\n", 1},                    // feature id must be positive
      {"1 qid:1 2:1.0 1:1.0\n", 1},              // not increasing
      {"-1 qid:1 1:1.0\n", 1},                   // negative label
      {"1 qid:1 1:inf\n", 1},                    // non-finite
      {"1 qid:1 1:0.5 #docid = a\n1 qid:1 #docid = a\n", 2},  // duplicate docid
  };
  for (const auto& [text, line] : cases) {
    try {
      parse(text);
      ADD_FAILURE() << "accepted: " << text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), line) << text;
    }
  }
}

TEST(ParseLetor, GroupsByQidPreservingRowOrderAndSynthesizesDocids) {
  const auto corpus = parse(
      "0 qid:2 1:1\n"
      "1 qid:1 1:2\n"
      "3 qid:2 1:3\n"
      "# a comment-only line\n"
      "2 qid:2 1:4\n");
  ASSERT_EQ(corpus.size(), 2u);
  EXPECT_EQ(corpus.queries()[0].qid, "1");
  const auto& q2 = corpus.queries()[1];
  EXPECT_EQ(q2.labels(), (std::vector<int>{0, 3, 2}));
  EXPECT_EQ(q2.docs[0].doc_id, "2:0");
  EXPECT_EQ(q2.docs[2].doc_id, "2:2");
  EXPECT_DOUBLE_EQ(q2.docs[1].feature(1), 3.0);
  EXPECT_DOUBLE_EQ(q2.docs[1].feature(7), 0.0);
  EXPECT_EQ(corpus.scale().max_grade(), 3);
}

TEST(ParseLetor, GradeOverride) {
  EXPECT_EQ(parse("1 qid:1\n", {4}).scale().max_grade(), 4);
  EXPECT_EQ(parse("0 qid:1\n").scale().max_grade(), 1);  // all-zero data still needs a scale
  try {
    parse("1 qid:1\n3 qid:1\n", {2});
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(ParseLetor, MslrStyleRowsWithManyFeatures) {
  const auto corpus = parse("4 qid:7 1:3 2:0 3:2 4:0 5:3 6:1e-3 7:+0.25\n");
  EXPECT_EQ(corpus.queries()[0].docs[0].features.size(), 7u);
  EXPECT_DOUBLE_EQ(corpus.queries()[0].docs[0].feature(7), 0.25);
}

TEST(ParseLetor, OrderPreservingOnRandomCorpora) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::ostringstream text;
    std::map<std::string, std::vector<int>> expected;
    const int rows = 1 + static_cast<int>(rng() % 60);
    for (int r = 0; r < rows; ++r) {
      const std::string qid = std::to_string(rng() % 5);
      const int label = static_cast<int>(rng() % 5);
      text << label << " qid:" << qid << " 1:" << r << "\n";
      expected[qid].push_back(label);
    }
    const auto corpus = parse(text.str());
    ASSERT_EQ(corpus.size(), expected.size());
    for (const auto& q : corpus.queries()) {
      EXPECT_EQ(q.labels(), expected.at(q.qid));
      // Histogram counts always add up to the document count.
      const auto h = histogram(q, corpus.scale());
      std::size_t sum = 0;
      for (const auto c : h.counts) sum += c;
      EXPECT_EQ(sum, q.docs.size());
      EXPECT_EQ(h.n, q.docs.size());
    }
  }
}

TEST(Histogram, CountsPerGrade) {
  const auto h = histogram(testing::make_query("q", {2, 1, 0, 0}), GradeScale(2));
  EXPECT_EQ(h.n, 4u);
  EXPECT_EQ(h.counts, (std::vector<std::size_t>{2, 1, 1}));

  const auto zeros = histogram(testing::make_query("q", {0, 0}), GradeScale(4));
  EXPECT_EQ(zeros.counts, (std::vector<std::size_t>{2, 0, 0, 0, 0}));

  EXPECT_THROW(histogram(testing::make_query("q", {3}), GradeScale(2)), std::out_of_range);
}

TEST(Binarize, SplitsAtThreshold) {
  LabelHistogram h{4, {2, 1, 1}};
  auto b = binarize(h);
  EXPECT_EQ(b.n_pos, 2u);
  EXPECT_EQ(b.n_neg, 2u);

  b = binarize(LabelHistogram{5, {5, 0, 0}});
  EXPECT_EQ(b.n_pos, 0u);
  EXPECT_EQ(b.n_neg, 5u);

  b = binarize(LabelHistogram{3, {0, 3}});
  EXPECT_EQ(b.n_pos, 3u);
  EXPECT_EQ(b.n_neg, 0u);

  b = binarize(h, 1);
  EXPECT_EQ(b.n_pos, 1u);
  EXPECT_EQ(b.total(), 4u);
}

TEST(Corpus, RejectsInvalidQueries) {
  EXPECT_THROW(Corpus(GradeScale(2), {QueryDocs{"", {{0, "a", {}}}}}), std::invalid_argument);
  EXPECT_THROW(Corpus(GradeScale(2), {QueryDocs{"q", {}}}), std::invalid_argument);
  EXPECT_THROW(Corpus(GradeScale(2), {testing::make_query("q", {3})}), std::out_of_range);
  EXPECT_THROW(Corpus(GradeScale(2), {testing::make_query("q", {1}), testing::make_query("q", {1})}),
               std::invalid_argument);
  EXPECT_THROW(GradeScale(0), std::invalid_argument);
}

TEST(Corpus, SubsampleIsSeededAndSorted) {
  std::vector<QueryDocs> qs;
  for (int i = 0; i < 50; ++i) qs.push_back(testing::make_query("q" + std::to_string(100 + i), {0, 1}));
  const Corpus corpus(GradeScale(1), qs);
  const auto a = corpus.subsample(10, 7);
  const auto b = corpus.subsample(10, 7);
  const auto c = corpus.subsample(10, 8);
  ASSERT_EQ(a.size(), 10u);
  std::vector<std::string> ids_a, ids_b, ids_c;
  for (const auto& q : a.queries()) ids_a.push_back(q.qid);
  for (const auto& q : b.queries()) ids_b.push_back(q.qid);
  for (const auto& q : c.queries()) ids_c.push_back(q.qid);
  EXPECT_EQ(ids_a, ids_b);
  EXPECT_NE(ids_a, ids_c);
  EXPECT_TRUE(std::is_sorted(ids_a.begin(), ids_a.end()));
  EXPECT_EQ(corpus.subsample(100, 1).size(), 50u);
}

TEST(TrecRun, ParsesSingleLine) {
  std::istringstream in("10 Q0 GX001 1 3.2 run1\n");
  const auto run = parse_trec_run(in);
  ASSERT_EQ(run.size(), 1u);
  EXPECT_EQ(run.at("10"), (std::vector<RunEntry>{{"GX001", 3.2}}));
}

TEST(TrecRun, EmptyStream) {
  std::istringstream in("");
  EXPECT_TRUE(parse_trec_run(in).empty());
}

TEST(TrecRun, Errors) {
  for (const std::string text : {"10 Q0 GX001 1 abc run1\n", "10 Q0 GX001 1 3.2\n", "10 Q1 GX001 1 3.2 r\n",
                                 "10 Q0 GX001 one 3.2 r\n", "10 Q0 GX001 1 nan r\n"}) {
    std::istringstream in(text);
    EXPECT_THROW(parse_trec_run(in), ParseError) << text;
  }
  std::istringstream in("1 Q0 a 1 1 t\n\n1 Q0 b 2 x t\n");
  try {
    parse_trec_run(in);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(TrecRun, WriteParseRoundTripOnRandomRuns) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> score(-1e3, 1e3);
  for (int trial = 0; trial < 25; ++trial) {
    TrecRun run;
    const int queries = 1 + static_cast<int>(rng() % 6);
    for (int q = 0; q < queries; ++q) {
      auto& entries = run["q" + std::to_string(rng() % 100)];
      const int n = 1 + static_cast<int>(rng() % 10);
      for (int i = 0; i < n; ++i) entries.push_back({"d" + std::to_string(rng() % 1000), score(rng)});
    }
    std::ostringstream out;
    write_trec_run(out, run, "tag");
    std::istringstream in(out.str());
    EXPECT_EQ(parse_trec_run(in), run);
  }
}

}  // namespace
}  // namespace rankeval
