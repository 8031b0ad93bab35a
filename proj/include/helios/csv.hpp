#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace helios::csv {

/// One parsed record and the 1-based physical line it started on.
struct Record {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

/// RFC-4180 reader: quoted fields, doubled quotes, embedded newlines, CRLF.
/// Blank lines are skipped.
std::vector<Record> read(std::istream& in);

/// Quotes a field only when it contains a separator, quote or line break.
std::string quote(std::string_view field);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

/// Shortest decimal representation that parses back to the identical double.
std::string format_double(double value);

/// Strict parse of a full field as a double. Returns false on any trailing junk,
/// empty input, or non-finite result.
bool parse_double(std::string_view text, double& out);

}  // namespace helios::csv
