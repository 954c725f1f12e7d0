#include "rankeval/harness.hpp"

#include <stdexcept>

#include "rankeval/format.hpp"

namespace rankeval {

RankerPolicy RankerPolicy::parse(const std::string& text) {
  RankerPolicy p;
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (name == "ideal" && arg.empty()) {
    p.kind = Kind::Ideal;
  } else if (name == "worst" && arg.empty()) {
    p.kind = Kind::Worst;
  } else if (name == "random") {
    p.kind = Kind::Random;
    if (!arg.empty()) {
      const auto v = parse_integer(arg);
      if (!v || *v < 0) throw std::invalid_argument("bad random seed '" + arg + "'");
      p.seed = static_cast<std::uint64_t>(*v);
    }
  } else if (name == "feature") {
    const auto v = parse_integer(arg);
    if (!v || *v < 1 || *v > 0xffffffffLL) throw std::invalid_argument("feature policy needs a positive id");
    p.kind = Kind::Feature;
    p.feature_id = static_cast<std::uint32_t>(*v);
  } else {
    throw std::invalid_argument("unknown ranker policy '" + text + "'");
  }
  return p;
}

std::string RankerPolicy::describe() const {
  switch (kind) {
    case Kind::Random: return "random:" + std::to_string(seed);
    case Kind::Ideal: return "ideal";
    case Kind::Worst: return "worst";
    case Kind::Feature: return "feature:" + std::to_string(feature_id);
  }
  return "?";
}

RunRankings generate_run(const Corpus& corpus, const RankerConfig& config, unsigned threads) {
  const auto& policy = config.policy;
  if (policy.kind == RankerPolicy::Kind::Feature && policy.feature_id == 0) {
    throw std::invalid_argument("feature policy needs a positive id");
  }
  const auto& queries = corpus.queries();
  std::vector<Ranking> rankings(queries.size());
  parallel_for(queries.size(), threads, [&](std::size_t i) {
    const auto& q = queries[i];
    switch (policy.kind) {
      case RankerPolicy::Kind::Random: rankings[i] = random_ranking(q, policy.seed); break;
      case RankerPolicy::Kind::Ideal: rankings[i] = ideal_ranking(q); break;
      case RankerPolicy::Kind::Worst: rankings[i] = worst_ranking(q); break;
      case RankerPolicy::Kind::Feature: rankings[i] = feature_ranking(q, policy.feature_id); break;
    }
  });
  RunRankings out;
  for (auto& r : rankings) {
    auto qid = r.qid;
    out.emplace(std::move(qid), std::move(r));
  }
  return out;
}

TrecRun to_trec_run(const Corpus& corpus, const RunRankings& rankings) {
  TrecRun run;
  for (const auto& [qid, ranking] : rankings) {
    const auto* query = corpus.find(qid);
    if (query == nullptr) throw std::invalid_argument("ranking for unknown qid " + qid);
    run.emplace(qid, to_run_entries(ranking, *query));
  }
  return run;
}

void write_run(std::ostream& out, const Corpus& corpus, const RunRankings& rankings, const std::string& tag) {
  write_trec_run(out, to_trec_run(corpus, rankings), tag);
}

}  // namespace rankeval
