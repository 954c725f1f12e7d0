#include "rankeval/dataset.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "rankeval/format.hpp"
#include "rankeval/random.hpp"

namespace rankeval {

namespace {

bool all_digits(std::string_view text) {
  return !text.empty() &&
         std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; });
}

// "docid = GX001" anywhere in the comment; the id is the next token.
std::optional<std::string> docid_from_comment(std::string_view comment) {
  const auto pos = comment.find("docid");
  if (pos == std::string_view::npos) return std::nullopt;
  auto rest = comment.substr(pos + 5);
  const auto eq = rest.find_first_not_of(" \t");
  if (eq == std::string_view::npos || rest[eq] != '=') return std::nullopt;
  const auto tokens = split_ws(rest.substr(eq + 1));
  if (tokens.empty()) return std::nullopt;
  return std::string(tokens.front());
}

void check_query(const QueryDocs& q, const GradeScale& scale) {
  if (q.qid.empty()) throw std::invalid_argument("query with empty qid");
  if (q.docs.empty()) throw std::invalid_argument("query " + q.qid + " has no documents");
  std::set<std::string_view> seen;
  for (const auto& doc : q.docs) {
    if (!scale.contains(doc.label)) {
      throw std::out_of_range("query " + q.qid + ": label " + std::to_string(doc.label) +
                              " outside 0.." + std::to_string(scale.max_grade()));
    }
    if (!seen.insert(doc.doc_id).second) {
      throw std::invalid_argument("query " + q.qid + ": duplicate docid " + doc.doc_id);
    }
    for (std::size_t i = 1; i < doc.features.size(); ++i) {
      if (doc.features[i].id <= doc.features[i - 1].id) {
        throw std::invalid_argument("query " + q.qid + ": feature ids not increasing");
      }
    }
  }
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
      line_(line) {}

GradeScale::GradeScale(int max_grade) : max_grade_(max_grade) {
  if (max_grade < 1) throw std::invalid_argument("max grade must be >= 1");
  // 2^g - 1 gains must stay exact in a double.
  if (max_grade > 30) throw std::invalid_argument("max grade must be <= 30");
}

double DocEntry::feature(std::uint32_t id) const noexcept {
  const auto it = std::lower_bound(features.begin(), features.end(), id,
                                   [](const FeatureValue& f, std::uint32_t v) { return f.id < v; });
  return it != features.end() && it->id == id ? it->value : 0.0;
}

std::vector<int> QueryDocs::labels() const {
  std::vector<int> out;
  out.reserve(docs.size());
  for (const auto& d : docs) out.push_back(d.label);
  return out;
}

std::optional<std::size_t> QueryDocs::find_doc(const std::string& doc_id) const {
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (docs[i].doc_id == doc_id) return i;
  }
  return std::nullopt;
}

Corpus::Corpus(GradeScale scale, std::vector<QueryDocs> queries)
    : scale_(scale), queries_(std::move(queries)) {
  std::sort(queries_.begin(), queries_.end(),
            [](const QueryDocs& a, const QueryDocs& b) { return a.qid < b.qid; });
  for (std::size_t i = 0; i < queries_.size(); ++i) {
    check_query(queries_[i], scale_);
    if (i > 0 && queries_[i].qid == queries_[i - 1].qid) {
      throw std::invalid_argument("duplicate qid " + queries_[i].qid);
    }
  }
}

const QueryDocs* Corpus::find(const std::string& qid) const {
  const auto it = std::lower_bound(queries_.begin(), queries_.end(), qid,
                                   [](const QueryDocs& q, const std::string& v) { return q.qid < v; });
  return it != queries_.end() && it->qid == qid ? &*it : nullptr;
}

Corpus Corpus::subsample(std::size_t count, std::uint64_t seed) const {
  if (count >= queries_.size()) return *this;
  std::vector<std::size_t> idx(queries_.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  Engine engine(seed);
  shuffle(std::span<std::size_t>(idx), engine);
  idx.resize(count);
  std::sort(idx.begin(), idx.end());
  std::vector<QueryDocs> kept;
  kept.reserve(count);
  for (const auto i : idx) kept.push_back(queries_[i]);
  return Corpus(scale_, std::move(kept));
}

Corpus parse_letor(std::istream& in, const LetorOptions& options) {
  struct Pending {
    QueryDocs query;
    std::vector<std::size_t> lines;
    std::unordered_set<std::string> ids;
  };
  std::vector<Pending> pending;
  std::unordered_map<std::string, std::size_t> slot;
  int max_label = 0;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    std::string_view comment;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      comment = line.substr(hash + 1);
      line = line.substr(0, hash);
    }
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;

    if (!all_digits(tokens[0])) throw ParseError(line_no, "label is not a non-negative integer");
    const auto label = parse_integer(tokens[0]);
    if (!label || *label > 30) throw ParseError(line_no, "label out of range (max 30)");
    if (tokens.size() < 2 || !tokens[1].starts_with("qid:") || tokens[1].size() == 4) {
      throw ParseError(line_no, "missing qid");
    }

    DocEntry doc;
    doc.label = static_cast<int>(*label);
    for (std::size_t t = 2; t < tokens.size(); ++t) {
      const auto tok = tokens[t];
      const auto colon = tok.find(':');
      if (colon == std::string_view::npos) throw ParseError(line_no, "bad feature pair '" + std::string(tok) + "'");
      const auto fid_text = tok.substr(0, colon);
      const auto fid = all_digits(fid_text) ? parse_integer(fid_text) : std::nullopt;
      const auto value = parse_finite_double(tok.substr(colon + 1));
      if (!fid || *fid < 1 || *fid > 0xffffffffLL || !value) {
        throw ParseError(line_no, "bad feature pair '" + std::string(tok) + "'");
      }
      const auto id = static_cast<std::uint32_t>(*fid);
      if (!doc.features.empty() && id <= doc.features.back().id) {
        throw ParseError(line_no, "feature ids must be strictly increasing");
      }
      doc.features.push_back({id, *value});
    }

    const std::string qid(tokens[1].substr(4));
    auto [it, inserted] = slot.try_emplace(qid, pending.size());
    if (inserted) pending.push_back({QueryDocs{qid, {}}, {}, {}});
    auto& target = pending[it->second];
    if (auto id = docid_from_comment(comment)) {
      doc.doc_id = std::move(*id);
    } else {
      doc.doc_id = qid + ":" + std::to_string(target.query.docs.size());
    }
    if (!target.ids.insert(doc.doc_id).second) {
      throw ParseError(line_no, "duplicate docid " + doc.doc_id + " in query " + qid);
    }
    max_label = std::max(max_label, doc.label);
    target.query.docs.push_back(std::move(doc));
    target.lines.push_back(line_no);
  }

  const int max_grade = options.max_grade.value_or(std::max(max_label, 1));
  const GradeScale scale(max_grade);
  if (max_label > max_grade) {
    for (const auto& p : pending) {
      for (std::size_t i = 0; i < p.query.docs.size(); ++i) {
        if (p.query.docs[i].label > max_grade) {
          throw ParseError(p.lines[i], "label " + std::to_string(p.query.docs[i].label) +
                                           " exceeds max grade " + std::to_string(max_grade));
        }
      }
    }
  }
  std::vector<QueryDocs> queries;
  queries.reserve(pending.size());
  for (auto& p : pending) queries.push_back(std::move(p.query));
  return Corpus(scale, std::move(queries));
}

LabelHistogram histogram(const QueryDocs& query, const GradeScale& scale) {
  LabelHistogram h;
  h.counts.assign(static_cast<std::size_t>(scale.max_grade()) + 1, 0);
  for (const auto& d : query.docs) {
    if (!scale.contains(d.label)) {
      throw std::out_of_range("label " + std::to_string(d.label) + " outside grade scale 0.." +
                              std::to_string(scale.max_grade()));
    }
    ++h.counts[static_cast<std::size_t>(d.label)];
    ++h.n;
  }
  return h;
}

BinaryCounts binarize(const LabelHistogram& hist, int threshold) {
  if (threshold < 0) throw std::invalid_argument("binarization threshold must be >= 0");
  BinaryCounts out;
  for (std::size_t j = 0; j < hist.counts.size(); ++j) {
    (static_cast<int>(j) > threshold ? out.n_pos : out.n_neg) += hist.counts[j];
  }
  return out;
}

TrecRun parse_trec_run(std::istream& in) {
  TrecRun run;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto tokens = split_ws(raw);
    if (tokens.empty()) continue;
    if (tokens.size() != 6) throw ParseError(line_no, "expected 6 fields, got " + std::to_string(tokens.size()));
    if (tokens[1] != "Q0") throw ParseError(line_no, "second field must be Q0");
    if (!parse_integer(tokens[3])) throw ParseError(line_no, "rank is not an integer");
    const auto score = parse_finite_double(tokens[4]);
    if (!score) throw ParseError(line_no, "score is not a finite number");
    run[std::string(tokens[0])].push_back({std::string(tokens[2]), *score});
  }
  return run;
}

void write_trec_run(std::ostream& out, const TrecRun& run, const std::string& tag) {
  for (const auto& [qid, entries] : run) {
    std::size_t rank = 1;
    for (const auto& e : entries) {
      out << qid << " Q0 " << e.doc_id << ' ' << rank++ << ' ' << format_double(e.score) << ' ' << tag
          << '\n';
    }
  }
}

}  // namespace rankeval
