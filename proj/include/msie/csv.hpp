#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace msie {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> records;  // may be ragged; row parsers validate
};

// RFC-4180 reader: quoted fields may contain commas, quotes ("") and newlines.
// Accepts LF or CRLF line endings. Throws DataError on a quote left open at EOF.
CsvTable read_csv(const std::filesystem::path& path);
CsvTable parse_csv(std::string_view text);

std::string csv_escape(std::string_view field);
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& records);

// Shortest decimal form that round-trips through double (std::to_chars).
std::string format_double(double v);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace msie
