#include "rankeval/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rankeval/random.hpp"

namespace rankeval {

std::string to_string(RlbMethod method) {
  switch (method) {
    case RlbMethod::Closed: return "closed";
    case RlbMethod::Exhaustive: return "exhaustive";
    case RlbMethod::MonteCarlo: return "montecarlo";
  }
  return "?";
}

ExpectedGainStats expected_gain_stats(const LabelHistogram& hist, const GradeScale& scale,
                                      int threshold, ErrGainMap map) {
  if (hist.n == 0) throw std::invalid_argument("expected_gain_stats: empty histogram");
  ExpectedGainStats s;
  const double n = static_cast<double>(hist.n);
  for (std::size_t j = 0; j < hist.counts.size(); ++j) {
    if (hist.counts[j] == 0) continue;
    const double pr = static_cast<double>(hist.counts[j]) / n;
    const int grade = static_cast<int>(j);
    s.e_gain += graded_gain(grade) * pr;
    s.e_prob += err_probability(grade, scale, map) * pr;
  }
  s.e_one_minus_prob = 1.0 - s.e_prob;
  const auto bin = binarize(hist, threshold);
  s.p_rel = static_cast<double>(bin.n_pos) / n;
  return s;
}

double iub(const MetricSpec& spec, const QueryDocs& query) {
  spec.validate();
  const auto labels = ranked_labels(ideal_ranking(query), query);
  return evaluate(spec, labels).value;
}

double rlb_dcg_closed(const QueryDocs& query, int k, double log_base, const GradeScale& scale) {
  const auto stats = expected_gain_stats(histogram(query, scale), scale);
  const int m = effective_cutoff(k, query.docs.size());
  double discount_sum = 0.0;
  for (int i = 1; i <= m; ++i) discount_sum += position_discount(i, log_base);
  return stats.e_gain * discount_sum;
}

double rlb_sp_closed(const QueryDocs& query, int k, int threshold) {
  std::size_t n_pos = 0;
  for (const auto& d : query.docs) n_pos += d.label > threshold ? 1 : 0;
  const double p = static_cast<double>(n_pos) / static_cast<double>(query.docs.size());
  return effective_cutoff(k, query.docs.size()) * p * p;
}

double rlb_err_closed(const QueryDocs& query, int k, const GradeScale& scale, ErrGainMap map) {
  const auto stats = expected_gain_stats(histogram(query, scale), scale, 0, map);
  const int m = effective_cutoff(k, query.docs.size());
  double total = 0.0;
  double survive = 1.0;
  for (int r = 1; r <= m; ++r) {
    total += survive * stats.e_prob / r;
    survive *= stats.e_one_minus_prob;
  }
  return total;
}

double rlb_closed(const MetricSpec& spec, const QueryDocs& query) {
  spec.validate();
  switch (spec.kind) {
    case MetricKind::Dcg: return rlb_dcg_closed(query, spec.k, spec.log_base, spec.scale);
    case MetricKind::Sp: return rlb_sp_closed(query, spec.k, spec.threshold);
    case MetricKind::Err: return rlb_err_closed(query, spec.k, spec.scale, spec.err_map);
  }
  throw std::logic_error("unknown metric kind");
}

namespace {

// A label class the enumeration draws from. For SP the classes are just
// relevant / non-relevant.
struct Category {
  std::size_t count = 0;
  double gain = 0.0;  // DCG gain, ERR stop probability, or SP relevance (0/1)
};

std::vector<Category> categories_for(const MetricSpec& spec, const QueryDocs& query) {
  const auto hist = histogram(query, spec.scale);
  std::vector<Category> cats;
  if (spec.kind == MetricKind::Sp) {
    const auto bin = binarize(hist, spec.threshold);
    if (bin.n_pos > 0) cats.push_back({bin.n_pos, 1.0});
    if (bin.n_neg > 0) cats.push_back({bin.n_neg, 0.0});
    return cats;
  }
  for (std::size_t j = 0; j < hist.counts.size(); ++j) {
    if (hist.counts[j] == 0) continue;
    const int grade = static_cast<int>(j);
    const double g = spec.kind == MetricKind::Dcg ? graded_gain(grade)
                                                  : err_probability(grade, spec.scale, spec.err_map);
    cats.push_back({hist.counts[j], g});
  }
  return cats;
}

struct PrefixState {
  double sum = 0.0;
  double survive = 1.0;  // ERR: probability the user reaches this position
  int hits = 0;          // SP: relevant documents so far
};

class PrefixEnumerator {
 public:
  PrefixEnumerator(const MetricSpec& spec, std::vector<Category> cats, std::size_t n, int depth)
      : kind_(spec.kind), cats_(std::move(cats)), n_(n), depth_(depth) {
    discounts_.resize(static_cast<std::size_t>(depth_) + 1);
    for (int i = 1; i <= depth_; ++i) discounts_[i] = position_discount(i, spec.log_base);
  }

  double run() {
    expectation_ = 0.0;
    if (depth_ > 0) visit(0, PrefixState{}, 1.0);
    return expectation_;
  }

 private:
  PrefixState step(const PrefixState& s, const Category& c, int position) const {
    PrefixState next = s;
    switch (kind_) {
      case MetricKind::Dcg:
        next.sum += c.gain * discounts_[position];
        break;
      case MetricKind::Sp:
        if (c.gain > 0.0) {
          ++next.hits;
          next.sum += static_cast<double>(next.hits) / position;
        }
        break;
      case MetricKind::Err:
        next.sum += s.survive * c.gain / position;
        next.survive *= 1.0 - c.gain;
        break;
    }
    return next;
  }

  void visit(int placed, const PrefixState& state, double weight) {
    const double remaining = static_cast<double>(n_ - static_cast<std::size_t>(placed));
    for (auto& c : cats_) {
      if (c.count == 0) continue;
      const double w = weight * static_cast<double>(c.count) / remaining;
      const auto next = step(state, c, placed + 1);
      if (placed + 1 == depth_) {
        expectation_ += w * next.sum;
        continue;
      }
      --c.count;
      visit(placed + 1, next, w);
      ++c.count;
    }
  }

  MetricKind kind_;
  std::vector<Category> cats_;
  std::size_t n_;
  int depth_;
  std::vector<double> discounts_;
  double expectation_ = 0.0;
};

}  // namespace

std::uint64_t prefix_class_count(const MetricSpec& spec, const QueryDocs& query, std::uint64_t cap) {
  spec.validate();
  const auto cats = categories_for(spec, query);
  const int m = effective_cutoff(spec.k, query.docs.size());
  const long double ceiling = static_cast<long double>(cap) + 1.0L;
  // ways[t]: distinct length-t sequences over the categories folded in so far.
  std::vector<long double> ways(static_cast<std::size_t>(m) + 1, 0.0L);
  ways[0] = 1.0L;
  for (const auto& c : cats) {
    std::vector<long double> next(ways.size(), 0.0L);
    for (int t = 0; t <= m; ++t) {
      long double binom = 1.0L;  // C(t, u)
      const int top = static_cast<int>(std::min<std::size_t>(c.count, static_cast<std::size_t>(t)));
      for (int u = 0; u <= top; ++u) {
        if (u > 0) binom = binom * (t - u + 1) / u;
        next[t] += ways[t - u] * binom;
      }
      next[t] = std::min(next[t], ceiling);
    }
    ways = std::move(next);
  }
  return static_cast<std::uint64_t>(std::min(ways[m], ceiling));
}

double rlb_exhaustive(const MetricSpec& spec, const QueryDocs& query, std::uint64_t limit) {
  const auto classes = prefix_class_count(spec, query, limit);
  if (classes > limit) {
    throw IntractableError("query " + query.qid + ": more than " + std::to_string(limit) +
                           " prefix classes for " + to_string(spec.kind) + "@" +
                           std::to_string(spec.k) + "; use Monte Carlo bounds");
  }
  PrefixEnumerator walk(spec, categories_for(spec, query), query.docs.size(),
                        effective_cutoff(spec.k, query.docs.size()));
  return walk.run();
}

McEstimate rlb_montecarlo(const MetricSpec& spec, const QueryDocs& query, std::size_t samples,
                          std::uint64_t seed) {
  spec.validate();
  if (samples < 2) throw std::invalid_argument("Monte Carlo needs at least 2 samples");
  auto labels = query.labels();
  const auto m = static_cast<std::size_t>(effective_cutoff(spec.k, labels.size()));
  Engine engine(derive_seed(seed, query.qid));
  // Welford running moments.
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    partial_shuffle(std::span<int>(labels), m, engine);
    const double x = evaluate(spec, std::span<const int>(labels.data(), m)).value;
    const double delta = x - mean;
    mean += delta / static_cast<double>(s + 1);
    m2 += delta * (x - mean);
  }
  const double var = m2 / static_cast<double>(samples - 1);
  return {mean, std::sqrt(var / static_cast<double>(samples))};
}

BoundSet compute_bounds(const MetricSpec& spec, const QueryDocs& query, const BoundMode& mode) {
  BoundSet out;
  out.iub = iub(spec, query);
  out.rlb_method = mode.method;
  switch (mode.method) {
    case RlbMethod::Closed:
      out.rlb = rlb_closed(spec, query);
      break;
    case RlbMethod::Exhaustive:
      out.rlb = rlb_exhaustive(spec, query, mode.prefix_limit);
      break;
    case RlbMethod::MonteCarlo: {
      const auto mc = rlb_montecarlo(spec, query, mode.mc_samples, mode.seed);
      out.rlb = mc.estimate;
      out.mc_stderr = mc.stderr_;
      break;
    }
  }
  return out;
}

double expected_upper_normalized(const MetricSpec& spec, const QueryDocs& query) {
  const double top = iub(spec, query);
  return top > 0.0 ? rlb_closed(spec, query) / top : 0.0;
}

}  // namespace rankeval
