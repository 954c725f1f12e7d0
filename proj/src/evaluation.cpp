#include "rankeval/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace rankeval {

RunRankings rankings_from_trec(const Corpus& corpus, const TrecRun& run) {
  RunRankings out;
  for (const auto& [qid, entries] : run) {
    const auto* query = corpus.find(qid);
    if (query == nullptr) continue;
    out.emplace(qid, ranking_from_run(*query, entries));
  }
  return out;
}

ScoreMatrix::ScoreMatrix(std::vector<std::string> methods, std::vector<std::string> qids,
                         std::vector<int> ks, MetricKind metric, NormVariant variant)
    : methods_(std::move(methods)),
      qids_(std::move(qids)),
      ks_(std::move(ks)),
      metric_(metric),
      variant_(variant),
      values_(methods_.size() * ks_.size() * qids_.size(), 0.0),
      degenerate_(values_.size(), 0) {}

std::vector<double> ScoreMatrix::row(std::size_t method, std::size_t k_index) const {
  const auto begin = values_.begin() + static_cast<std::ptrdiff_t>(index(method, k_index, 0));
  return {begin, begin + static_cast<std::ptrdiff_t>(qids_.size())};
}

std::vector<bool> ScoreMatrix::degenerate_row(std::size_t method, std::size_t k_index) const {
  std::vector<bool> out(qids_.size());
  for (std::size_t q = 0; q < qids_.size(); ++q) out[q] = degenerate(method, k_index, q);
  return out;
}

double ScoreMatrix::method_average(std::size_t method) const {
  double sum = 0.0;
  for (std::size_t k = 0; k < ks_.size(); ++k) sum += cell_mean(method, k);
  return ks_.empty() ? 0.0 : sum / static_cast<double>(ks_.size());
}

double ScoreMatrix::cell_mean(std::size_t method, std::size_t k_index, bool exclude_degenerate) const {
  const auto values = row(method, k_index);
  return aggregate_mean(values, degenerate_row(method, k_index), exclude_degenerate);
}

ScoreMatrix ScoreMatrix::restrict_to(const std::vector<std::string>& qids) const {
  std::unordered_map<std::string_view, std::size_t> pos;
  for (std::size_t q = 0; q < qids_.size(); ++q) pos.emplace(qids_[q], q);
  std::vector<std::size_t> keep;
  for (const auto& qid : qids) {
    const auto it = pos.find(qid);
    if (it == pos.end()) throw std::invalid_argument("qid " + qid + " not in score matrix");
    keep.push_back(it->second);
  }
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());

  std::vector<std::string> kept_qids;
  for (const auto q : keep) kept_qids.push_back(qids_[q]);
  ScoreMatrix out(methods_, std::move(kept_qids), ks_, metric_, variant_);
  for (std::size_t m = 0; m < methods_.size(); ++m) {
    for (std::size_t k = 0; k < ks_.size(); ++k) {
      for (std::size_t i = 0; i < keep.size(); ++i) {
        out.at(m, k, i) = at(m, k, keep[i]);
        out.set_degenerate(m, k, i, degenerate(m, k, keep[i]));
      }
    }
  }
  out.clamped_bounds = clamped_bounds;
  return out;
}

bool ScoreMatrix::same_shape(const ScoreMatrix& other) const {
  return methods_ == other.methods_ && qids_ == other.qids_ && ks_ == other.ks_;
}

std::size_t ScoreMatrix::degenerate_count() const {
  return static_cast<std::size_t>(std::count(degenerate_.begin(), degenerate_.end(), 1));
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& task) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(threads, 1u), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex guard;
  std::size_t failed_at = count;
  std::exception_ptr failure;
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(guard);
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  pool.clear();  // joins
  if (failure) std::rethrow_exception(failure);
}

std::vector<ScoreMatrix> build_score_matrices(const Corpus& corpus, const std::vector<NamedRun>& runs,
                                              const EvalOptions& options,
                                              const std::vector<NormVariant>& variants) {
  if (options.ks.empty()) throw std::invalid_argument("cutoff list is empty");
  if (runs.empty()) throw std::invalid_argument("no runs to evaluate");
  for (const int k : options.ks) {
    auto spec = options.metric;
    spec.k = k;
    spec.validate();
  }

  std::vector<std::string> methods;
  std::vector<std::string> qids;
  for (const auto& q : corpus.queries()) qids.push_back(q.qid);
  for (const auto& run : runs) {
    methods.push_back(run.method);
    std::string missing;
    std::size_t missing_count = 0;
    for (const auto& qid : qids) {
      if (run.rankings.count(qid) != 0) continue;
      if (missing_count++ < 20) missing += (missing.empty() ? "" : ", ") + qid;
    }
    if (missing_count > 0) {
      if (missing_count > 20) missing += ", ...";
      throw std::invalid_argument("run " + run.method + " is missing " + std::to_string(missing_count) +
                                  " queries: " + missing);
    }
  }

  std::vector<ScoreMatrix> out;
  for (const auto v : variants) out.emplace_back(methods, qids, options.ks, options.metric.kind, v);
  std::vector<std::size_t> clamped(qids.size(), 0);
  // Raw and upper-normalized scores never read RLB; skip costly oracles then.
  const bool needs_rlb = std::any_of(variants.begin(), variants.end(), [](NormVariant v) {
    return v == NormVariant::V1 || v == NormVariant::V2;
  });
  const BoundMode bound_mode = needs_rlb ? options.bounds : BoundMode{};

  parallel_for(qids.size(), options.threads, [&](std::size_t qi) {
    const auto& query = corpus.queries()[qi];
    std::vector<std::vector<int>> labels;
    labels.reserve(runs.size());
    for (const auto& run : runs) {
      const auto& ranking = run.rankings.at(query.qid);
      if (!ranking.is_permutation_of(query.docs.size())) {
        throw std::invalid_argument("run " + run.method + ", query " + query.qid +
                                    ": ranking is not a permutation of the query's documents");
      }
      labels.push_back(ranked_labels(ranking, query));
    }
    for (std::size_t ki = 0; ki < options.ks.size(); ++ki) {
      auto spec = options.metric;
      spec.k = options.ks[ki];
      auto bounds = compute_bounds(spec, query, bound_mode);
      if (bounds.rlb > bounds.iub + kBoundSlack * std::max(1.0, bounds.iub)) {
        bounds.rlb = bounds.iub;
        ++clamped[qi];
      }
      for (std::size_t mi = 0; mi < runs.size(); ++mi) {
        const double raw = evaluate(spec, labels[mi]).value;
        for (std::size_t vi = 0; vi < variants.size(); ++vi) {
          const auto score = normalize(variants[vi], raw, bounds.iub, bounds.rlb);
          out[vi].at(mi, ki, qi) = score.value;
          out[vi].set_degenerate(mi, ki, qi, score.degenerate);
        }
      }
    }
  });

  std::size_t total_clamped = 0;
  for (const auto c : clamped) total_clamped += c;
  for (auto& matrix : out) matrix.clamped_bounds = total_clamped;
  return out;
}

ScoreMatrix build_score_matrix(const Corpus& corpus, const std::vector<NamedRun>& runs,
                               const EvalOptions& options, NormVariant variant) {
  return std::move(build_score_matrices(corpus, runs, options, {variant}).front());
}

}  // namespace rankeval
