#include "sensfeat/csv.h"

#include <fstream>
#include <ostream>
#include <sstream>

#include "sensfeat/error.h"

namespace sensfeat {
namespace {

// Splits text into records of fields; reports the 1-based line of each record.
class CsvParser {
 public:
  explicit CsvParser(std::string_view text) : text_(text) {
    if (text_.starts_with("\xEF\xBB\xBF")) text_.remove_prefix(3);
  }

  bool next(std::vector<std::string>& record, std::size_t& line) {
    record.clear();
    if (pos_ >= text_.size()) return false;
    line = line_;
    std::string field;
    bool quoted = false;
    bool field_started_quoted = false;
    while (pos_ < text_.size()) {
      const char c = text_[pos_++];
      if (quoted) {
        if (c == '"') {
          if (pos_ < text_.size() && text_[pos_] == '"') {
            field.push_back('"');
            ++pos_;
          } else {
            quoted = false;
          }
        } else {
          if (c == '\n') ++line_;
          field.push_back(c);
        }
        continue;
      }
      if (c == '"' && field.empty() && !field_started_quoted) {
        quoted = true;
        field_started_quoted = true;
      } else if (c == ',') {
        record.push_back(std::move(field));
        field.clear();
        field_started_quoted = false;
      } else if (c == '\r' && pos_ < text_.size() && text_[pos_] == '\n') {
        // CRLF: the '\n' ends the record on the next iteration.
      } else if (c == '\n') {
        ++line_;
        record.push_back(std::move(field));
        return true;
      } else {
        field.push_back(c);
      }
    }
    if (quoted) {
      throw DataError("CSV line " + std::to_string(line) + ": unterminated quoted field");
    }
    record.push_back(std::move(field));
    return true;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

bool is_blank(const std::vector<std::string>& record) {
  return record.size() == 1 && record.front().empty();
}

}  // namespace

CsvTable parse_csv(std::string_view text) {
  CsvParser parser(text);
  CsvTable table;
  std::vector<std::string> record;
  std::size_t line = 0;
  if (!parser.next(record, line) || is_blank(record)) {
    throw DataError("CSV input has no header row");
  }
  table.header = record;
  while (parser.next(record, line)) {
    if (is_blank(record)) continue;
    if (record.size() != table.header.size()) {
      throw DataError("CSV line " + std::to_string(line) + ": expected " +
                      std::to_string(table.header.size()) + " fields, found " +
                      std::to_string(record.size()));
    }
    table.rows.push_back(record);
  }
  return table;
}

CsvTable read_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open CSV file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str());
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_csv_row(std::ostream& out, std::span<const std::string> fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    out << csv_escape(fields[i]);
  }
  out << '\n';
}

}  // namespace sensfeat
