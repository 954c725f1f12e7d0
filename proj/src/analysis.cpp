#include "rankeval/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

#include "rankeval/bounds.hpp"
#include "rankeval/random.hpp"

namespace rankeval {

namespace {

int sign(double x) { return (x > 0.0) - (x < 0.0); }

struct PairCounts {
  std::size_t concordant = 0;
  std::size_t discordant = 0;
  std::size_t untied_a = 0;
  std::size_t untied_b = 0;
  std::size_t pairs = 0;
};

PairCounts count_pairs(const MethodRanking& a, const MethodRanking& b) {
  if (a.methods.size() != a.scores.size() || b.methods.size() != b.scores.size()) {
    throw std::invalid_argument("method ranking has mismatched scores");
  }
  if (a.methods.size() != b.methods.size()) throw std::invalid_argument("method sets differ");
  std::map<std::string, double> b_score;
  for (std::size_t i = 0; i < b.methods.size(); ++i) b_score[b.methods[i]] = b.scores[i];
  if (b_score.size() != b.methods.size()) throw std::invalid_argument("duplicate method in ranking");

  std::vector<double> ys;
  ys.reserve(a.methods.size());
  for (const auto& m : a.methods) {
    const auto it = b_score.find(m);
    if (it == b_score.end()) throw std::invalid_argument("method sets differ: " + m);
    ys.push_back(it->second);
  }
  PairCounts c;
  const auto n = a.methods.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const int sa = sign(a.scores[i] - a.scores[j]);
      const int sb = sign(ys[i] - ys[j]);
      ++c.pairs;
      c.untied_a += sa != 0;
      c.untied_b += sb != 0;
      if (sa * sb > 0) ++c.concordant;
      if (sa * sb < 0) ++c.discordant;
    }
  }
  return c;
}

struct Moments {
  double mean = 0.0;
  double sd = 0.0;
};

Moments moments(std::span<const double> d) {
  const double n = static_cast<double>(d.size());
  Moments m;
  for (const double v : d) m.mean += v;
  m.mean /= n;
  double ss = 0.0;
  for (const double v : d) ss += (v - m.mean) * (v - m.mean);
  m.sd = std::sqrt(ss / (n - 1.0));
  return m;
}

// Differences that vary only by rounding noise count as constant.
bool negligible(double sd, double scale) { return sd <= 1e-12 * std::max(1.0, std::abs(scale)); }

std::vector<double> differences(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("paired samples differ in length");
  if (x.size() < 2) throw std::invalid_argument("paired test needs at least 2 pairs");
  std::vector<double> d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
  return d;
}

}  // namespace

MethodRanking MethodRanking::from_scores(const std::vector<std::string>& methods,
                                         const std::vector<double>& scores) {
  if (methods.size() != scores.size()) throw std::invalid_argument("methods and scores differ in length");
  std::vector<std::size_t> idx(methods.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] != scores[b] ? scores[a] > scores[b] : methods[a] < methods[b];
  });
  MethodRanking out;
  for (const auto i : idx) {
    out.methods.push_back(methods[i]);
    out.scores.push_back(scores[i]);
  }
  return out;
}

MethodRanking MethodRanking::from_order(const std::vector<std::string>& best_first) {
  MethodRanking out;
  out.methods = best_first;
  for (std::size_t i = 0; i < best_first.size(); ++i) {
    out.scores.push_back(static_cast<double>(best_first.size() - i));
  }
  return out;
}

MethodRanking method_ranking(const ScoreMatrix& matrix) {
  std::vector<double> averages;
  for (std::size_t m = 0; m < matrix.methods().size(); ++m) averages.push_back(matrix.method_average(m));
  return MethodRanking::from_scores(matrix.methods(), averages);
}

double kendall_tau(const MethodRanking& a, const MethodRanking& b) {
  const auto c = count_pairs(a, b);
  const double denom = std::sqrt(static_cast<double>(c.untied_a) * static_cast<double>(c.untied_b));
  if (denom == 0.0) return 0.0;
  return (static_cast<double>(c.concordant) - static_cast<double>(c.discordant)) / denom;
}

double swap_rate(const MethodRanking& a, const MethodRanking& b) {
  const auto c = count_pairs(a, b);
  return c.pairs == 0 ? 0.0 : static_cast<double>(c.discordant) / static_cast<double>(c.pairs);
}

PadResult pad(const std::map<std::string, double>& averages) {
  if (averages.size() < 2) throw std::invalid_argument("PAD needs at least 2 methods");
  std::vector<double> xs;
  for (const auto& [_, v] : averages) xs.push_back(v);
  PadResult out;
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j, ++pairs) {
      const double diff = std::abs(xs[i] - xs[j]);
      const double top = std::max(xs[i], xs[j]);
      if (diff == 0.0) continue;
      if (top > 0.0) {
        sum += diff / top * 100.0;
        continue;
      }
      // Both non-positive: relative to |max|, or to the other magnitude when max is 0.
      ++out.degenerate_pairs;
      const double denom = top < 0.0 ? -top : std::max(std::abs(xs[i]), std::abs(xs[j]));
      sum += diff / denom * 100.0;
    }
  }
  out.value = sum / static_cast<double>(pairs);
  return out;
}

double paired_ttest(std::span<const double> x, std::span<const double> y) {
  const auto d = differences(x, y);
  const auto mo = moments(d);
  if (negligible(mo.sd, mo.mean)) return negligible(std::abs(mo.mean), 1.0) ? 1.0 : 0.0;
  const double n = static_cast<double>(d.size());
  const double t = mo.mean / (mo.sd / std::sqrt(n));
  const boost::math::students_t dist(n - 1.0);
  return std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))));
}

double bootstrap_test(std::span<const double> x, std::span<const double> y, std::size_t resamples,
                      std::uint64_t seed) {
  if (resamples < 100) throw std::invalid_argument("bootstrap needs at least 100 resamples");
  const auto d = differences(x, y);
  const auto mo = moments(d);
  if (negligible(mo.sd, mo.mean)) return negligible(std::abs(mo.mean), 1.0) ? 1.0 : 0.0;
  const std::size_t n = d.size();
  const double root_n = std::sqrt(static_cast<double>(n));
  const double t_obs = std::abs(mo.mean / (mo.sd / root_n));

  Engine engine(seed);
  std::vector<double> sample(n);
  std::size_t valid = 0;
  std::size_t extreme = 0;
  for (std::size_t b = 0; b < resamples; ++b) {
    for (auto& v : sample) v = d[uniform_below(engine, n)];
    const auto ms = moments(sample);
    if (negligible(ms.sd, ms.mean)) continue;
    ++valid;
    // Null distribution: centre the resampled statistic on the observed mean.
    const double t_star = (ms.mean - mo.mean) / (ms.sd / root_n);
    if (std::abs(t_star) >= t_obs) ++extreme;
  }
  return valid == 0 ? 1.0 : static_cast<double>(extreme) / static_cast<double>(valid);
}

std::vector<PairComparison> pairwise_pvalues(const ScoreMatrix& matrix, const SignificanceOptions& options) {
  const auto& methods = matrix.methods();
  std::vector<PairComparison> out;
  for (std::size_t a = 0; a < methods.size(); ++a) {
    for (std::size_t b = a + 1; b < methods.size(); ++b) {
      for (std::size_t k = 0; k < matrix.ks().size(); ++k) {
        const auto x = matrix.row(a, k);
        const auto y = matrix.row(b, k);
        double p = 1.0;
        if (options.test == SignificanceTest::TTest) {
          p = paired_ttest(x, y);
        } else {
          const std::string key = methods[a] + '\x1f' + methods[b] + '\x1f' + std::to_string(matrix.ks()[k]);
          p = bootstrap_test(x, y, options.bootstrap_resamples, derive_seed(options.seed, key));
        }
        out.push_back({a, b, k, p});
      }
    }
  }
  return out;
}

std::size_t count_significant_pairs(const ScoreMatrix& matrix, const SignificanceOptions& options) {
  if (matrix.methods().size() < 2) throw std::invalid_argument("significance counting needs >= 2 methods");
  const auto all = pairwise_pvalues(matrix, options);
  return static_cast<std::size_t>(std::count_if(
      all.begin(), all.end(), [&](const PairComparison& c) { return c.p_value < options.alpha; }));
}

std::size_t count_conflicts(const ScoreMatrix& a, const ScoreMatrix& b, const SignificanceOptions& options) {
  if (!a.same_shape(b)) throw std::invalid_argument("score matrices differ in methods, queries or cutoffs");
  const auto pa = pairwise_pvalues(a, options);
  const auto pb = pairwise_pvalues(b, options);
  std::size_t conflicts = 0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    conflicts += (pa[i].p_value < options.alpha) != (pb[i].p_value < options.alpha);
  }
  return conflicts;
}

QueryGapTable compute_query_gaps(const ScoreMatrix& upper, const Corpus& corpus, const MetricSpec& metric) {
  if (upper.methods().empty() || upper.ks().empty()) throw std::invalid_argument("empty score matrix");
  QueryGapTable table;
  const double cells = static_cast<double>(upper.methods().size() * upper.ks().size());
  for (std::size_t q = 0; q < upper.qids().size(); ++q) {
    const auto* query = corpus.find(upper.qids()[q]);
    if (query == nullptr) throw std::invalid_argument("qid " + upper.qids()[q] + " not in corpus");
    QueryGap g{query->qid, 0.0, 0.0, 0.0};
    for (std::size_t k = 0; k < upper.ks().size(); ++k) {
      for (std::size_t m = 0; m < upper.methods().size(); ++m) g.actual += upper.at(m, k, q);
      auto spec = metric;
      spec.k = upper.ks()[k];
      g.expected += expected_upper_normalized(spec, *query);
    }
    g.actual /= cells;
    g.expected /= static_cast<double>(upper.ks().size());
    g.gap = g.actual - g.expected;
    table.entries.push_back(std::move(g));
  }
  std::sort(table.entries.begin(), table.entries.end(), [](const QueryGap& a, const QueryGap& b) {
    return a.gap != b.gap ? a.gap < b.gap : a.qid < b.qid;
  });
  return table;
}

QuerySets categorize_queries(const QueryGapTable& gaps, std::size_t top_n) {
  const auto& e = gaps.entries;
  if (2 * top_n > e.size()) {
    throw std::invalid_argument("top_n " + std::to_string(top_n) + " exceeds half of " +
                                std::to_string(e.size()) + " queries");
  }
  std::vector<std::size_t> idx(e.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return e[a].gap != e[b].gap ? e[a].gap < e[b].gap : e[a].qid < e[b].qid;
  });
  QuerySets out;
  for (std::size_t i = 0; i < top_n; ++i) out.uninformative.push_back(e[idx[i]].qid);
  // Largest gaps among the rest; equal gaps prefer the smaller qid.
  std::vector<std::size_t> rest(idx.begin() + static_cast<std::ptrdiff_t>(top_n), idx.end());
  std::sort(rest.begin(), rest.end(), [&](std::size_t a, std::size_t b) {
    return e[a].gap != e[b].gap ? e[a].gap > e[b].gap : e[a].qid < e[b].qid;
  });
  for (std::size_t i = 0; i < top_n; ++i) out.ideal.push_back(e[rest[i]].qid);
  std::sort(out.uninformative.begin(), out.uninformative.end());
  std::sort(out.ideal.begin(), out.ideal.end());
  return out;
}

}  // namespace rankeval
