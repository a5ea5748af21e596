#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace valuation::csv {

using Row = std::vector<std::string>;
using Table = std::vector<Row>;

/// RFC-4180-style emission with LF line endings; fields are quoted only when
/// they contain a comma, quote or newline, so emit(parse(s)) is a fixed
/// point on emitted output.
std::string emit(const Table& table);

Table parse(std::string_view text);

/// Shortest decimal representation that round-trips the double exactly.
std::string format_number(double value);

} // namespace valuation::csv
