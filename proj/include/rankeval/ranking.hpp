#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rankeval/dataset.hpp"

namespace rankeval {

/// A permutation of a query's document indices, best first.
struct Ranking {
  std::string qid;
  std::vector<std::size_t> order;

  bool is_permutation_of(std::size_t n) const;
  bool operator==(const Ranking&) const = default;
};

// All constructors break ties by ascending original document index.

/// Throws std::invalid_argument on a length mismatch or a non-finite score.
Ranking ranking_from_scores(const QueryDocs& query, std::span<const double> scores);
Ranking ideal_ranking(const QueryDocs& query);
Ranking worst_ranking(const QueryDocs& query);
/// Uniform permutation; the engine is seeded with derive_seed(seed, qid).
Ranking random_ranking(const QueryDocs& query, std::uint64_t seed);
/// Descending by feature value; a missing feature counts as 0.
Ranking feature_ranking(const QueryDocs& query, std::uint32_t feature_id);

/// Orders the query's documents by run score. Documents the run does not
/// mention follow all retrieved ones, in original index order. Unknown or
/// repeated docids throw std::invalid_argument.
Ranking ranking_from_run(const QueryDocs& query, std::span<const RunEntry> entries);

/// Labels read along the ranking.
std::vector<int> ranked_labels(const Ranking& ranking, const QueryDocs& query);

/// Run entries in ranked order with score n - position, so re-sorting by score
/// reproduces the ranking.
std::vector<RunEntry> to_run_entries(const Ranking& ranking, const QueryDocs& query);

}  // namespace rankeval
