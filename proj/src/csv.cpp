#include "indexforge/csv.hpp"

#include <cstdio>

#include "indexforge/error.hpp"

namespace indexforge::csv {

std::string_view trim(std::string_view s)
{
  constexpr std::string_view ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

Row split_line(std::string_view line)
{
  Row row;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  if (quoted) throw Error(ErrorKind::MalformedData, "unterminated quote in CSV line");
  row.push_back(std::move(field));
  return row;
}

std::vector<Row> read_rows(std::istream& in)
{
  std::vector<Row> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (first && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    first = false;
    if (trim(line).empty()) continue;
    rows.push_back(split_line(line));
  }
  return rows;
}

std::string quote_if_needed(std::string_view field)
{
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_row(std::ostream& out, const Row& row)
{
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out << ',';
    out << quote_if_needed(row[i]);
  }
  out << '\n';
}

std::string format_fixed(double value)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  std::string out(buf);
  if (out == "-0.000000") out = "0.000000";
  return out;
}

}  // namespace indexforge::csv
