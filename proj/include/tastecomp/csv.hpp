#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace tastecomp::csv {

struct Row {
  std::size_t line = 0;  // 1-based line on which the record starts
  std::vector<std::string> fields;
};

// RFC 4180 reader: quoted fields, doubled quotes, CRLF, leading UTF-8 BOM.
// Blank lines are skipped. `source` only labels ParseError messages.
std::vector<Row> parse(std::string_view text, std::string_view source);

std::string escape(std::string_view field);
std::string join(const std::vector<std::string>& fields);

// Shortest decimal form that round-trips to the same double.
std::string format_number(double value);

// Strict decimal parse of a whole field; throws ParseError on junk.
double parse_number(std::string_view field, std::string_view source, std::size_t line,
                    std::string_view column);

}  // namespace tastecomp::csv
