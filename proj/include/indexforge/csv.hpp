#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

// Minimal CSV dialect: comma delimiter, '"' quoting with "" escapes, LF or
// CRLF line endings, UTF-8 passed through untouched.
namespace indexforge::csv {

using Row = std::vector<std::string>;

/// Reads all non-empty records. A UTF-8 BOM on the first line is dropped.
std::vector<Row> read_rows(std::istream& in);

Row split_line(std::string_view line);

std::string quote_if_needed(std::string_view field);
void write_row(std::ostream& out, const Row& row);

std::string_view trim(std::string_view s);

/// "%.6f", with negative zero written as 0.000000.
std::string format_fixed(double value);

}  // namespace indexforge::csv
