#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "rankeval/dataset.hpp"
#include "rankeval/metrics.hpp"

namespace rankeval {

/// Label-distribution moments that drive the closed-form lower bounds.
struct ExpectedGainStats {
  double e_gain = 0.0;            ///< E[2^R - 1]
  double e_prob = 0.0;            ///< E[R] under the ERR stop-probability map
  double e_one_minus_prob = 1.0;  ///< E[1 - R]
  double p_rel = 0.0;             ///< N_p / (N_p + N_n)
};

ExpectedGainStats expected_gain_stats(const LabelHistogram& hist, const GradeScale& scale,
                                      int threshold = 0, ErrGainMap map = ErrGainMap::Cascade);

enum class RlbMethod { Closed, Exhaustive, MonteCarlo };
std::string to_string(RlbMethod method);

struct BoundSet {
  double iub = 0.0;
  double rlb = 0.0;
  RlbMethod rlb_method = RlbMethod::Closed;
  std::optional<double> mc_stderr;
};

/// Thrown by the exhaustive oracle when the query has too many prefix classes.
class IntractableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultPrefixLimit = 1'000'000;

/// The metric on the ideal ranking.
double iub(const MetricSpec& spec, const QueryDocs& query);

/// E[DCG@k] = E[2^R - 1] * sum_{i<=min(k,n)} 1/log_b(i+1). Exact.
double rlb_dcg_closed(const QueryDocs& query, int k, double log_base, const GradeScale& scale);
/// min(k,n) * (N_p/n)^2. Treats Prec(i) and R_i as independent, so it is an
/// approximation of the permutation expectation.
double rlb_sp_closed(const QueryDocs& query, int k, int threshold);
/// sum_r (1/r) E[1-R]^(r-1) E[R]. Treats positions as independent; approximate.
double rlb_err_closed(const QueryDocs& query, int k, const GradeScale& scale,
                      ErrGainMap map = ErrGainMap::Cascade);
double rlb_closed(const MetricSpec& spec, const QueryDocs& query);

/// Number of distinct label sequences that can fill the first min(k,n)
/// positions, saturated at cap + 1.
std::uint64_t prefix_class_count(const MetricSpec& spec, const QueryDocs& query,
                                 std::uint64_t cap = kDefaultPrefixLimit);

/// Exact E[metric@k] over uniformly random permutations, by enumerating label
/// prefixes weighted by their probability. Throws IntractableError above `limit`
/// prefix classes.
double rlb_exhaustive(const MetricSpec& spec, const QueryDocs& query,
                      std::uint64_t limit = kDefaultPrefixLimit);

struct McEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
};

/// Mean and standard error of the metric over `samples` random rankings drawn
/// from an engine seeded with derive_seed(seed, qid). samples >= 2.
McEstimate rlb_montecarlo(const MetricSpec& spec, const QueryDocs& query, std::size_t samples,
                          std::uint64_t seed);

/// Selects how RLB is obtained.
struct BoundMode {
  RlbMethod method = RlbMethod::Closed;
  std::size_t mc_samples = 10'000;
  std::uint64_t seed = 0;
  std::uint64_t prefix_limit = kDefaultPrefixLimit;
};

BoundSet compute_bounds(const MetricSpec& spec, const QueryDocs& query, const BoundMode& mode);

/// Closed-form RLB divided by IUB; 0 when IUB is 0.
double expected_upper_normalized(const MetricSpec& spec, const QueryDocs& query);

}  // namespace rankeval
