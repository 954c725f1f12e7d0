#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rankeval {

/// Shortest decimal text that reads back to exactly `value`.
std::string format_double(double value);

/// Whole-token parses; nullopt on any trailing garbage, overflow, or non-finite result.
std::optional<double> parse_finite_double(std::string_view text);
std::optional<long long> parse_integer(std::string_view text);

/// Splits on runs of ASCII whitespace.
std::vector<std::string_view> split_ws(std::string_view text);

}  // namespace rankeval
