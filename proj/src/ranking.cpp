#include "rankeval/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "rankeval/random.hpp"

namespace rankeval {

namespace {

std::vector<std::size_t> identity(std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  return order;
}

// Stable sort keeps ascending index among equal keys.
template <class Key>
Ranking sorted_by(const QueryDocs& query, Key key) {
  auto order = identity(query.docs.size());
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return key(a) > key(b); });
  return {query.qid, std::move(order)};
}

}  // namespace

bool Ranking::is_permutation_of(std::size_t n) const {
  if (order.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (const auto i : order) {
    if (i >= n || seen[i]) return false;
    seen[i] = true;
  }
  return true;
}

Ranking ranking_from_scores(const QueryDocs& query, std::span<const double> scores) {
  if (scores.size() != query.docs.size()) {
    throw std::invalid_argument("query " + query.qid + ": " + std::to_string(scores.size()) +
                                " scores for " + std::to_string(query.docs.size()) + " documents");
  }
  for (const double s : scores) {
    if (!std::isfinite(s)) throw std::invalid_argument("query " + query.qid + ": non-finite score");
  }
  return sorted_by(query, [&](std::size_t i) { return scores[i]; });
}

Ranking ideal_ranking(const QueryDocs& query) {
  return sorted_by(query, [&](std::size_t i) { return query.docs[i].label; });
}

Ranking worst_ranking(const QueryDocs& query) {
  return sorted_by(query, [&](std::size_t i) { return -query.docs[i].label; });
}

Ranking random_ranking(const QueryDocs& query, std::uint64_t seed) {
  auto order = identity(query.docs.size());
  Engine engine(derive_seed(seed, query.qid));
  shuffle(std::span<std::size_t>(order), engine);
  return {query.qid, std::move(order)};
}

Ranking feature_ranking(const QueryDocs& query, std::uint32_t feature_id) {
  if (feature_id == 0) throw std::invalid_argument("feature id must be positive");
  std::vector<double> values;
  values.reserve(query.docs.size());
  for (const auto& d : query.docs) values.push_back(d.feature(feature_id));
  return sorted_by(query, [&](std::size_t i) { return values[i]; });
}

Ranking ranking_from_run(const QueryDocs& query, std::span<const RunEntry> entries) {
  std::unordered_map<std::string_view, std::size_t> index;
  index.reserve(query.docs.size());
  for (std::size_t i = 0; i < query.docs.size(); ++i) index.emplace(query.docs[i].doc_id, i);

  struct Hit {
    std::size_t doc;
    double score;
  };
  std::vector<Hit> hits;
  std::vector<bool> retrieved(query.docs.size(), false);
  for (const auto& e : entries) {
    const auto it = index.find(e.doc_id);
    if (it == index.end()) {
      throw std::invalid_argument("query " + query.qid + ": unknown docid " + e.doc_id);
    }
    if (retrieved[it->second]) {
      throw std::invalid_argument("query " + query.qid + ": docid " + e.doc_id + " ranked twice");
    }
    retrieved[it->second] = true;
    hits.push_back({it->second, e.score});
  }
  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
    return a.score != b.score ? a.score > b.score : a.doc < b.doc;
  });

  Ranking out{query.qid, {}};
  out.order.reserve(query.docs.size());
  for (const auto& h : hits) out.order.push_back(h.doc);
  for (std::size_t i = 0; i < query.docs.size(); ++i) {
    if (!retrieved[i]) out.order.push_back(i);
  }
  return out;
}

std::vector<int> ranked_labels(const Ranking& ranking, const QueryDocs& query) {
  std::vector<int> out;
  out.reserve(ranking.order.size());
  for (const auto i : ranking.order) out.push_back(query.docs.at(i).label);
  return out;
}

std::vector<RunEntry> to_run_entries(const Ranking& ranking, const QueryDocs& query) {
  const auto n = ranking.order.size();
  std::vector<RunEntry> out;
  out.reserve(n);
  for (std::size_t pos = 0; pos < n; ++pos) {
    out.push_back({query.docs.at(ranking.order[pos]).doc_id, static_cast<double>(n - pos)});
  }
  return out;
}

}  // namespace rankeval
