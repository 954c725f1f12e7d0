#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace rankeval::cli {

/// Empty (monostate) cells become an empty CSV field and JSON null.
using Cell = std::variant<std::monostate, std::string, double, long long>;

enum class OutputFormat { Csv, Json, Both };

/// Streams rows to `<stem>.csv` and/or `<stem>.json` under a directory.
/// JSON layout: {"columns": [...], "rows": [{column: value, ...}, ...]}
class TableWriter {
 public:
  TableWriter(const std::filesystem::path& dir, const std::string& stem, std::vector<std::string> header,
              OutputFormat format);
  TableWriter(const TableWriter&) = delete;
  TableWriter& operator=(const TableWriter&) = delete;
  ~TableWriter();

  void row(const std::vector<Cell>& cells);
  /// Flushes and checks both streams; throws on I/O failure.
  void close();

 private:
  std::vector<std::string> header_;
  std::filesystem::path csv_path_;
  std::filesystem::path json_path_;
  std::optional<std::ofstream> csv_;
  std::optional<std::ofstream> json_;
  bool first_row_ = true;
  bool closed_ = false;
};

}  // namespace rankeval::cli
