#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace wetmeta::detail {

struct CsvRow {
  std::vector<std::string> fields;
  std::size_t line = 0;  // 1-based line number in the source text
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<CsvRow> rows;
};

// Plain comma-delimited text, no quoting; blank lines are skipped.
CsvTable read_csv_text(std::string_view text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace wetmeta::detail
