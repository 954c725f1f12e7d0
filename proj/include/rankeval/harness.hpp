#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "rankeval/dataset.hpp"
#include "rankeval/evaluation.hpp"

namespace rankeval {

struct RankerPolicy {
  enum class Kind { Random, Ideal, Worst, Feature };
  Kind kind = Kind::Ideal;
  std::uint64_t seed = 0;       // Random
  std::uint32_t feature_id = 0;  // Feature, must be positive

  /// "ideal", "worst", "random:SEED" or "feature:ID".
  static RankerPolicy parse(const std::string& text);
  std::string describe() const;
};

struct RankerConfig {
  RankerPolicy policy;
  std::string tag = "rankeval";
};

/// One ranking per corpus query, by the configured reference policy.
RunRankings generate_run(const Corpus& corpus, const RankerConfig& config, unsigned threads = 1);

/// Scores are n - position so the order survives a write/parse round trip.
TrecRun to_trec_run(const Corpus& corpus, const RunRankings& rankings);

void write_run(std::ostream& out, const Corpus& corpus, const RunRankings& rankings, const std::string& tag);

}  // namespace rankeval
