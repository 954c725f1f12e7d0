#include "rankeval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rankeval {

std::string to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::Dcg: return "dcg";
    case MetricKind::Sp: return "sp";
    case MetricKind::Err: return "err";
  }
  return "?";
}

void MetricSpec::validate() const {
  if (k < 1) throw std::invalid_argument("cutoff k must be >= 1");
  if (!(log_base > 1.0)) throw std::invalid_argument("log base must be > 1");
  if (threshold < 0 || threshold > scale.max_grade()) {
    throw std::invalid_argument("binarization threshold outside the grade scale");
  }
  if (err_map == ErrGainMap::LabelAsValue && scale.max_grade() != 1) {
    throw std::invalid_argument("label-as-value ERR mapping requires a binary scale");
  }
}

int effective_cutoff(int k, std::size_t n) {
  return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(std::max(k, 0)), n));
}

double position_discount(int position, double log_base) {
  const double x = static_cast<double>(position) + 1.0;
  if (log_base == 2.0) return 1.0 / std::log2(x);
  return std::log(log_base) / std::log(x);
}

double graded_gain(int grade) { return std::ldexp(1.0, grade) - 1.0; }

double err_probability(int grade, int max_grade) {
  if (grade < 0 || grade > max_grade) throw std::out_of_range("grade outside the scale");
  return graded_gain(grade) / std::ldexp(1.0, max_grade);
}

double err_probability(int grade, const GradeScale& scale, ErrGainMap map) {
  if (map == ErrGainMap::LabelAsValue) {
    if (scale.max_grade() != 1) throw std::invalid_argument("label-as-value ERR mapping requires a binary scale");
    if (!scale.contains(grade)) throw std::out_of_range("grade outside the scale");
    return static_cast<double>(grade);
  }
  return err_probability(grade, scale.max_grade());
}

double dcg(std::span<const int> ranked, int k, double log_base) {
  const int m = effective_cutoff(k, ranked.size());
  double total = 0.0;
  for (int i = 0; i < m; ++i) total += graded_gain(ranked[i]) * position_discount(i + 1, log_base);
  return total;
}

double sum_precision(std::span<const int> ranked, int k, int threshold) {
  const int m = effective_cutoff(k, ranked.size());
  double total = 0.0;
  int hits = 0;
  for (int i = 0; i < m; ++i) {
    if (ranked[i] > threshold) {
      ++hits;
      total += static_cast<double>(hits) / (i + 1);
    }
  }
  return total;
}

double err(std::span<const int> ranked, int k, const GradeScale& scale, ErrGainMap map) {
  const int m = effective_cutoff(k, ranked.size());
  double total = 0.0;
  double not_stopped = 1.0;
  for (int r = 0; r < m; ++r) {
    const double p = err_probability(ranked[r], scale, map);
    total += not_stopped * p / (r + 1);
    not_stopped *= 1.0 - p;
  }
  return total;
}

MetricValue evaluate(const MetricSpec& spec, std::span<const int> ranked) {
  const int m = effective_cutoff(spec.k, ranked.size());
  switch (spec.kind) {
    case MetricKind::Dcg: return {dcg(ranked, spec.k, spec.log_base), m};
    case MetricKind::Sp: return {sum_precision(ranked, spec.k, spec.threshold), m};
    case MetricKind::Err: return {err(ranked, spec.k, spec.scale, spec.err_map), m};
  }
  throw std::logic_error("unknown metric kind");
}

namespace {

std::vector<int> checked_labels(const Ranking& ranking, const QueryDocs& query) {
  if (!ranking.is_permutation_of(query.docs.size())) {
    throw std::invalid_argument("ranking for " + ranking.qid + " is not a permutation of the query's documents");
  }
  return ranked_labels(ranking, query);
}

MetricValue ratio(MetricValue num, double den) {
  return {den > 0.0 ? num.value / den : 0.0, num.effective_k};
}

}  // namespace

MetricValue dcg_at_k(const Ranking& ranking, const QueryDocs& query, int k, double log_base) {
  const auto labels = checked_labels(ranking, query);
  return {dcg(labels, k, log_base), effective_cutoff(k, labels.size())};
}

MetricValue ndcg_at_k(const Ranking& ranking, const QueryDocs& query, int k, double log_base) {
  const auto ideal = ranked_labels(ideal_ranking(query), query);
  return ratio(dcg_at_k(ranking, query, k, log_base), dcg(ideal, k, log_base));
}

MetricValue sp_at_k(const Ranking& ranking, const QueryDocs& query, int k, int threshold) {
  const auto labels = checked_labels(ranking, query);
  return {sum_precision(labels, k, threshold), effective_cutoff(k, labels.size())};
}

MetricValue ap_at_k(const Ranking& ranking, const QueryDocs& query, int k, int threshold) {
  if (k < 1) throw std::invalid_argument("cutoff k must be >= 1");
  auto v = sp_at_k(ranking, query, k, threshold);
  v.value /= k;
  return v;
}

MetricValue err_at_k(const Ranking& ranking, const QueryDocs& query, int k, const GradeScale& scale) {
  const auto labels = checked_labels(ranking, query);
  return {err(labels, k, scale), effective_cutoff(k, labels.size())};
}

MetricValue nerr_at_k(const Ranking& ranking, const QueryDocs& query, int k, const GradeScale& scale) {
  const auto ideal = ranked_labels(ideal_ranking(query), query);
  return ratio(err_at_k(ranking, query, k, scale), err(ideal, k, scale));
}

double aggregate_mean(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("mean of an empty list");
  double sum = 0.0;
  for (const double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double aggregate_mean(std::span<const double> values, const std::vector<bool>& degenerate,
                      bool exclude_degenerate) {
  if (!exclude_degenerate) return aggregate_mean(values);
  if (degenerate.size() != values.size()) throw std::invalid_argument("degenerate mask size mismatch");
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (degenerate[i]) continue;
    sum += values[i];
    ++count;
  }
  if (count == 0) throw std::invalid_argument("mean of an empty list");
  return sum / static_cast<double>(count);
}

}  // namespace rankeval
