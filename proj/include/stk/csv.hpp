#pragma once

#include <string>
#include <string_view>
#include <vector>

// Minimal RFC 4180 helpers for single-line records (fields never contain
// newlines in this project's formats).
namespace stk::csv {

/// Splits one record; quoted fields may contain commas and doubled quotes.
/// Throws `Error(ParseError)` on an unterminated quote.
[[nodiscard]] std::vector<std::string> split_line(std::string_view line);

/// Quotes the field when it contains a comma, quote or leading/trailing space.
[[nodiscard]] std::string escape(std::string_view field);

}  // namespace stk::csv
