#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rankeval {

/// Raised by the file parsers. `line()` is 1-based; 0 when not line-specific.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Relevance labels range over {0, ..., max_grade}.
class GradeScale {
 public:
  explicit GradeScale(int max_grade);
  int max_grade() const noexcept { return max_grade_; }
  bool contains(int label) const noexcept { return label >= 0 && label <= max_grade_; }
  bool operator==(const GradeScale&) const = default;

 private:
  int max_grade_;
};

struct FeatureValue {
  std::uint32_t id = 0;
  double value = 0.0;
  bool operator==(const FeatureValue&) const = default;
};

struct DocEntry {
  int label = 0;
  std::string doc_id;
  /// Sparse, ids strictly increasing.
  std::vector<FeatureValue> features;

  /// Value of feature `id`, 0 when absent.
  double feature(std::uint32_t id) const noexcept;
};

struct QueryDocs {
  std::string qid;
  std::vector<DocEntry> docs;  // dataset row order

  std::vector<int> labels() const;
  /// Index of the document with this id, if any.
  std::optional<std::size_t> find_doc(const std::string& doc_id) const;
};

/// Immutable after construction; queries iterate in ascending qid order.
class Corpus {
 public:
  Corpus() : scale_(1) {}
  /// Validates every label against the scale and the per-query invariants.
  Corpus(GradeScale scale, std::vector<QueryDocs> queries);

  const GradeScale& scale() const noexcept { return scale_; }
  const std::vector<QueryDocs>& queries() const noexcept { return queries_; }
  std::size_t size() const noexcept { return queries_.size(); }
  bool empty() const noexcept { return queries_.empty(); }
  const QueryDocs* find(const std::string& qid) const;

  /// Keeps `count` queries chosen uniformly at random (seeded); order stays
  /// ascending qid. count >= size() returns a copy.
  Corpus subsample(std::size_t count, std::uint64_t seed) const;

 private:
  GradeScale scale_;
  std::vector<QueryDocs> queries_;
};

struct LabelHistogram {
  std::size_t n = 0;
  std::vector<std::size_t> counts;  // counts[j] = documents with label j
};

struct BinaryCounts {
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;
  std::size_t total() const noexcept { return n_pos + n_neg; }
};

struct LetorOptions {
  /// Overrides the max-observed-label inference.
  std::optional<int> max_grade;
};

/// Parses LETOR / SVMlight-style rank data:
///   LABEL qid:QID FID:VAL ... [# comment, optionally "docid = ID"]
Corpus parse_letor(std::istream& in, const LetorOptions& options = {});

/// Throws std::out_of_range when a label falls outside the scale.
LabelHistogram histogram(const QueryDocs& query, const GradeScale& scale);

/// Documents with label > threshold are relevant.
BinaryCounts binarize(const LabelHistogram& hist, int threshold = 0);

struct RunEntry {
  std::string doc_id;
  double score = 0.0;
  bool operator==(const RunEntry&) const = default;
};

/// qid -> entries in file order.
using TrecRun = std::map<std::string, std::vector<RunEntry>>;

/// Parses `QID Q0 DOCID RANK SCORE TAG` lines.
TrecRun parse_trec_run(std::istream& in);

/// Emits entries in map order, ranks 1.. within each qid.
void write_trec_run(std::ostream& out, const TrecRun& run, const std::string& tag);

}  // namespace rankeval
