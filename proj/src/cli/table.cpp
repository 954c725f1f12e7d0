#include "table.hpp"

#include <stdexcept>

#include <json.hpp>

#include "rankeval/format.hpp"

namespace rankeval::cli {

namespace {

std::string csv_field(const Cell& cell) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(const std::string& s) const {
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string quoted = "\"";
      for (const char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
      }
      return quoted + '"';
    }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(long long v) const { return std::to_string(v); }
  };
  return std::visit(Visitor{}, cell);
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

TableWriter::TableWriter(const std::filesystem::path& dir, const std::string& stem,
                         std::vector<std::string> header, OutputFormat format)
    : header_(std::move(header)) {
  if (format != OutputFormat::Json) {
    csv_path_ = dir / (stem + ".csv");
    csv_.emplace(open_output(csv_path_));
    for (std::size_t i = 0; i < header_.size(); ++i) *csv_ << (i ? "," : "") << header_[i];
    *csv_ << '\n';
  }
  if (format != OutputFormat::Csv) {
    json_path_ = dir / (stem + ".json");
    json_.emplace(open_output(json_path_));
    *json_ << "{\"columns\":" << nlohmann::json(header_).dump() << ",\"rows\":[";
  }
}

TableWriter::~TableWriter() {
  if (closed_) return;
  try {
    close();
  } catch (...) {
  }
}

void TableWriter::row(const std::vector<Cell>& cells) {
  if (cells.size() != header_.size()) throw std::logic_error("table row width mismatch");
  if (csv_) {
    for (std::size_t i = 0; i < cells.size(); ++i) *csv_ << (i ? "," : "") << csv_field(cells[i]);
    *csv_ << '\n';
  }
  if (json_) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
              obj[header_[i]] = nullptr;
            } else {
              obj[header_[i]] = v;
            }
          },
          cells[i]);
    }
    *json_ << (first_row_ ? "\n" : ",\n") << obj.dump();
  }
  first_row_ = false;
}

void TableWriter::close() {
  if (closed_) return;
  closed_ = true;
  if (csv_) {
    csv_->flush();
    if (!*csv_) throw std::runtime_error("failed writing " + csv_path_.string());
  }
  if (json_) {
    *json_ << "\n]}\n";
    json_->flush();
    if (!*json_) throw std::runtime_error("failed writing " + json_path_.string());
  }
}

}  // namespace rankeval::cli
