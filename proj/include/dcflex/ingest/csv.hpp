#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace dcflex::ingest {

/// Records of a comma-separated file. Quoted fields may contain commas and
/// doubled quotes but not line breaks.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;  // 1-based source line of each row

  /// Index of a header column, or npos.
  std::size_t column(std::string_view name) const;
};

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

/// Throws DataError when the file cannot be opened.
CsvTable read_csv(const std::filesystem::path& path, bool has_header = true);
CsvTable parse_csv(std::string_view text, bool has_header = true);

std::vector<std::string> parse_csv_line(std::string_view line);
std::string csv_escape(std::string_view field);

}  // namespace dcflex::ingest
