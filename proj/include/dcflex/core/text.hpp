#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dcflex {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_number(double value);

/// Parses a complete decimal number; nullopt on any trailing garbage or empty input.
std::optional<double> parse_number(std::string_view text);

std::string_view trim(std::string_view text);
std::vector<std::string> split(std::string_view text, char sep);

/// Parses "a,b,c" into numbers; throws DomainError on a bad element.
std::vector<double> parse_number_list(std::string_view text);

}  // namespace dcflex
