#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "stk/series.hpp"

namespace stk {

/// Which CSV column holds what. A selector is matched against the header
/// names first; failing that, a selector made only of digits is a 0-based
/// column index.
struct CsvReadOptions {
    std::string datetime_column = "0";
    std::string value_column = "1";
    /// strptime-style pattern; ISO-8601 auto-detection when absent.
    std::optional<std::string> datetime_format;
};

/// Parses ISO-8601 date or date-time text: `YYYY-MM-DD`, optionally followed
/// by `T` or a space and `hh:mm[:ss[.fff]]`, optionally followed by `Z` or a
/// `+hh:mm` / `-hh:mm` offset. Fractional seconds are truncated.
[[nodiscard]] std::optional<Instant> parse_iso8601(std::string_view text);

/// Parses with a strptime pattern, interpreting the result as UTC.
[[nodiscard]] std::optional<Instant> parse_datetime(std::string_view text, const std::string& format);

/// Builds a series from CSV text with a header row. Every malformed row is an
/// `Error(ParseError)` whose message names its 1-based line number (the
/// header is line 1); blank lines are ignored. Series-level validation
/// errors (non-increasing timestamps, too few rows) also name a line.
[[nodiscard]] TimeSeries parse_series_csv(std::string_view text, const CsvReadOptions& options = {});

/// Reads a file and calls `parse_series_csv`; throws `Error(IoError)` when the
/// file cannot be read.
[[nodiscard]] TimeSeries read_series_csv(const std::filesystem::path& path, const CsvReadOptions& options = {});

[[nodiscard]] std::string read_text_file(const std::filesystem::path& path);

}  // namespace stk
