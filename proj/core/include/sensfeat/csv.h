#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sensfeat {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// RFC 4180 reader: quoted fields, doubled quotes, embedded newlines, CRLF or
// LF line endings, optional UTF-8 byte-order mark. Every record must have as
// many fields as the header; a blank trailing line is ignored.
CsvTable parse_csv(std::string_view text);
CsvTable read_csv_file(const std::filesystem::path& path);

// Quotes a field only when it contains a delimiter, quote or line break.
std::string csv_escape(std::string_view field);
void write_csv_row(std::ostream& out, std::span<const std::string> fields);

}  // namespace sensfeat
