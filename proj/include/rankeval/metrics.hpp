#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rankeval/dataset.hpp"
#include "rankeval/ranking.hpp"

namespace rankeval {

/// Raw metric families. Their upper-bound normalized forms are nDCG, SP/IUB[SP]
/// and nERR.
enum class MetricKind { Dcg, Sp, Err };

/// How ERR turns a grade into a stop probability.
enum class ErrGainMap {
  Cascade,       ///< (2^g - 1) / 2^g_max
  LabelAsValue,  ///< R = g; binary scales only
};

std::string to_string(MetricKind kind);

struct MetricSpec {
  MetricKind kind = MetricKind::Dcg;
  int k = 10;
  double log_base = 2.0;  ///< DCG discount base
  int threshold = 0;      ///< SP: label > threshold is relevant
  GradeScale scale{1};    ///< ERR gain mapping
  ErrGainMap err_map = ErrGainMap::Cascade;

  /// Throws std::invalid_argument when k < 1, log_base <= 1, threshold outside
  /// the scale, or LabelAsValue on a non-binary scale.
  void validate() const;
};

struct MetricValue {
  double value = 0.0;
  int effective_k = 0;  ///< min(k, n)
};

int effective_cutoff(int k, std::size_t n);

/// 1 / log_b(i + 1) for 1-based position i.
double position_discount(int position, double log_base);
/// 2^g - 1
double graded_gain(int grade);
double err_probability(int grade, int max_grade);
double err_probability(int grade, const GradeScale& scale, ErrGainMap map);

// Label-sequence kernels: `ranked` holds labels in ranked order.
double dcg(std::span<const int> ranked, int k, double log_base);
double sum_precision(std::span<const int> ranked, int k, int threshold);
double err(std::span<const int> ranked, int k, const GradeScale& scale,
           ErrGainMap map = ErrGainMap::Cascade);
/// The raw metric of `spec` on a ranked label sequence.
MetricValue evaluate(const MetricSpec& spec, std::span<const int> ranked);

MetricValue dcg_at_k(const Ranking& ranking, const QueryDocs& query, int k, double log_base = 2.0);
/// DCG / IDCG; 0 when IDCG is 0.
MetricValue ndcg_at_k(const Ranking& ranking, const QueryDocs& query, int k, double log_base = 2.0);
MetricValue sp_at_k(const Ranking& ranking, const QueryDocs& query, int k, int threshold = 0);
/// SP@k / k. The divisor stays k when the query is shorter than k.
MetricValue ap_at_k(const Ranking& ranking, const QueryDocs& query, int k, int threshold = 0);
MetricValue err_at_k(const Ranking& ranking, const QueryDocs& query, int k, const GradeScale& scale);
/// ERR / ERR(ideal); 0 when the ideal ERR is 0.
MetricValue nerr_at_k(const Ranking& ranking, const QueryDocs& query, int k, const GradeScale& scale);

/// Arithmetic mean. Throws std::invalid_argument on an empty list.
double aggregate_mean(std::span<const double> values);
/// Mean skipping entries flagged degenerate when `exclude_degenerate` is set.
double aggregate_mean(std::span<const double> values, const std::vector<bool>& degenerate,
                      bool exclude_degenerate);

}  // namespace rankeval
