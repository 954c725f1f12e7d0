#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rankeval/dataset.hpp"
#include "rankeval/evaluation.hpp"
#include "rankeval/metrics.hpp"

namespace rankeval {

/// Methods ordered best-first by score, keeping the scores for tie handling.
struct MethodRanking {
  std::vector<std::string> methods;
  std::vector<double> scores;  // aligned with `methods`

  /// Ties broken by ascending method name.
  static MethodRanking from_scores(const std::vector<std::string>& methods,
                                   const std::vector<double>& scores);
  /// A strict order; scores become m, m-1, ..., 1.
  static MethodRanking from_order(const std::vector<std::string>& best_first);
};

/// Ranks the matrix's methods by their average over queries and cutoffs.
MethodRanking method_ranking(const ScoreMatrix& matrix);

/// Kendall's tau-b between two rankings of the same method set.
double kendall_tau(const MethodRanking& a, const MethodRanking& b);
/// Discordant pairs / C(m, 2).
double swap_rate(const MethodRanking& a, const MethodRanking& b);

struct PadResult {
  double value = 0.0;
  /// Pairs whose larger average was <= 0 (and not both 0).
  std::size_t degenerate_pairs = 0;
};

/// Mean over method pairs of |X1 - X2| / max(X1, X2) * 100.
PadResult pad(const std::map<std::string, double>& averages);

/// Two-sided paired t-test p-value. Zero-variance differences give p = 1 when
/// their mean is 0 and p = 0 otherwise.
double paired_ttest(std::span<const double> x, std::span<const double> y);

/// Studentised paired bootstrap p-value over `resamples` query resamples.
/// Resamples with zero variance carry no t statistic and are skipped.
double bootstrap_test(std::span<const double> x, std::span<const double> y,
                      std::size_t resamples = 1000, std::uint64_t seed = 0);

enum class SignificanceTest { TTest, Bootstrap };

struct SignificanceOptions {
  double alpha = 0.05;
  SignificanceTest test = SignificanceTest::TTest;
  std::size_t bootstrap_resamples = 1000;
  std::uint64_t seed = 0;
};

struct PairComparison {
  std::size_t method_a = 0;
  std::size_t method_b = 0;
  std::size_t k_index = 0;
  double p_value = 1.0;
};

/// Every method pair (a < b) at every cutoff, in (a, b, k) order. The bootstrap
/// seed of a comparison derives from (seed, method names, k).
std::vector<PairComparison> pairwise_pvalues(const ScoreMatrix& matrix, const SignificanceOptions& options);

std::size_t count_significant_pairs(const ScoreMatrix& matrix, const SignificanceOptions& options);

/// Comparisons significant under exactly one of the two matrices.
std::size_t count_conflicts(const ScoreMatrix& a, const ScoreMatrix& b, const SignificanceOptions& options);

struct QueryGap {
  std::string qid;
  double actual = 0.0;    ///< mean upper-normalized score over methods and cutoffs
  double expected = 0.0;  ///< mean closed-form RLB / IUB over cutoffs
  double gap = 0.0;       ///< actual - expected
};

/// Ascending by gap, ties by qid.
struct QueryGapTable {
  std::vector<QueryGap> entries;
};

/// `upper` holds upper-normalized scores for the corpus queries; `metric`
/// supplies the parameters for the expected values.
QueryGapTable compute_query_gaps(const ScoreMatrix& upper, const Corpus& corpus, const MetricSpec& metric);

struct QuerySets {
  std::vector<std::string> uninformative;  ///< smallest gaps, sorted by qid
  std::vector<std::string> ideal;          ///< largest gaps, sorted by qid
};

/// Throws std::invalid_argument when 2 * top_n exceeds the number of queries.
QuerySets categorize_queries(const QueryGapTable& gaps, std::size_t top_n);

}  // namespace rankeval
