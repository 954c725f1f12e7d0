#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rankeval/bounds.hpp"
#include "rankeval/dataset.hpp"
#include "rankeval/metrics.hpp"
#include "rankeval/ranking.hpp"
#include "rankeval/ulnorm.hpp"

namespace rankeval {

/// qid -> ranking for one method.
using RunRankings = std::map<std::string, Ranking>;

struct NamedRun {
  std::string method;
  RunRankings rankings;
};

/// Resolves a parsed run against the corpus. Queries absent from the corpus are
/// ignored. Unknown docids throw std::invalid_argument naming the qid.
RunRankings rankings_from_trec(const Corpus& corpus, const TrecRun& run);

/// Method x cutoff x query table of (normalized) metric values.
class ScoreMatrix {
 public:
  ScoreMatrix() = default;
  ScoreMatrix(std::vector<std::string> methods, std::vector<std::string> qids, std::vector<int> ks,
              MetricKind metric, NormVariant variant);

  const std::vector<std::string>& methods() const noexcept { return methods_; }
  const std::vector<std::string>& qids() const noexcept { return qids_; }
  const std::vector<int>& ks() const noexcept { return ks_; }
  MetricKind metric() const noexcept { return metric_; }
  NormVariant variant() const noexcept { return variant_; }

  double& at(std::size_t method, std::size_t k_index, std::size_t query) {
    return values_[index(method, k_index, query)];
  }
  double at(std::size_t method, std::size_t k_index, std::size_t query) const {
    return values_[index(method, k_index, query)];
  }
  bool degenerate(std::size_t method, std::size_t k_index, std::size_t query) const {
    return degenerate_[index(method, k_index, query)] != 0;
  }
  void set_degenerate(std::size_t method, std::size_t k_index, std::size_t query, bool flag) {
    degenerate_[index(method, k_index, query)] = flag ? 1 : 0;
  }

  /// Per-query scores of one method at one cutoff.
  std::vector<double> row(std::size_t method, std::size_t k_index) const;
  std::vector<bool> degenerate_row(std::size_t method, std::size_t k_index) const;
  /// Average over queries and cutoffs.
  double method_average(std::size_t method) const;
  /// Average over queries at one cutoff.
  double cell_mean(std::size_t method, std::size_t k_index, bool exclude_degenerate = false) const;

  /// The same table over a subset of queries (kept in this matrix's order).
  ScoreMatrix restrict_to(const std::vector<std::string>& qids) const;

  bool same_shape(const ScoreMatrix& other) const;

  /// Cells where a bound convention fired.
  std::size_t degenerate_count() const;
  /// (query, cutoff) pairs whose approximate RLB exceeded IUB and was clamped to it.
  std::size_t clamped_bounds = 0;

 private:
  std::size_t index(std::size_t m, std::size_t k, std::size_t q) const {
    return (m * ks_.size() + k) * qids_.size() + q;
  }

  std::vector<std::string> methods_;
  std::vector<std::string> qids_;
  std::vector<int> ks_;
  MetricKind metric_ = MetricKind::Dcg;
  NormVariant variant_ = NormVariant::None;
  std::vector<double> values_;
  std::vector<unsigned char> degenerate_;  // byte per cell: workers write concurrently
};

struct EvalOptions {
  MetricSpec metric;  ///< kind and parameters; k is taken from `ks`
  std::vector<int> ks{5, 10, 15, 20, 30};
  BoundMode bounds;
  unsigned threads = 1;
};

/// One matrix per requested variant, sharing a single bound computation per
/// (query, k). Every run must cover every corpus query; the error lists the
/// missing qids. Output does not depend on `threads`.
std::vector<ScoreMatrix> build_score_matrices(const Corpus& corpus, const std::vector<NamedRun>& runs,
                                              const EvalOptions& options,
                                              const std::vector<NormVariant>& variants);

ScoreMatrix build_score_matrix(const Corpus& corpus, const std::vector<NamedRun>& runs,
                               const EvalOptions& options, NormVariant variant);

/// Runs `task(i)` for i in [0, count) on up to `threads` workers. Rethrows the
/// exception of the lowest failing index.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& task);

}  // namespace rankeval
