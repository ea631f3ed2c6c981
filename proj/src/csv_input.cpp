#include "stk/csv_input.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ctime>
#include <fmt/format.h>
#include <fstream>
#include <sstream>

#include "stk/csv.hpp"
#include "stk/error.hpp"

namespace stk {

namespace csv {

std::vector<std::string> split_line(std::string_view line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
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
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field += c;
        }
    }
    if (quoted) throw Error(ErrorKind::ParseError, "unterminated quoted field");
    fields.push_back(std::move(field));
    return fields;
}

std::string escape(std::string_view field) {
    const bool needs_quotes = field.find_first_of(",\"\r\n") != std::string_view::npos ||
                              (!field.empty() && (field.front() == ' ' || field.back() == ' '));
    if (!needs_quotes) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace csv

namespace {

bool parse_fixed(std::string_view s, std::size_t pos, std::size_t len, int& out) {
    if (pos + len > s.size()) return false;
    for (std::size_t i = pos; i < pos + len; ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    std::from_chars(s.data() + pos, s.data() + pos + len, out);
    return true;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::size_t resolve_column(const std::vector<std::string>& header, const std::string& selector,
                           std::string_view role) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (trim(header[i]) == selector) return i;
    }
    std::size_t index = 0;
    const auto [ptr, ec] = std::from_chars(selector.data(), selector.data() + selector.size(), index);
    if (ec == std::errc{} && ptr == selector.data() + selector.size() && !selector.empty()) {
        if (index < header.size()) return index;
        throw Error(ErrorKind::ParseError, fmt::format("line 1: {} column index {} out of range ({} columns)",
                                                       role, index, header.size()));
    }
    throw Error(ErrorKind::ParseError, fmt::format("line 1: no {} column named '{}'", role, selector));
}

}  // namespace

std::optional<Instant> parse_iso8601(std::string_view s) {
    using namespace std::chrono;
    s = trim(s);
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0;
    if (!parse_fixed(s, 0, 4, y) || s.size() < 10 || s[4] != '-' || !parse_fixed(s, 5, 2, mo) ||
        s[7] != '-' || !parse_fixed(s, 8, 2, d)) {
        return std::nullopt;
    }
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) return std::nullopt;
    std::size_t pos = 10;
    int offset_seconds = 0;
    if (pos < s.size() && (s[pos] == 'T' || s[pos] == ' ')) {
        ++pos;
        if (!parse_fixed(s, pos, 2, h) || pos + 2 >= s.size() || s[pos + 2] != ':' ||
            !parse_fixed(s, pos + 3, 2, mi)) {
            return std::nullopt;
        }
        pos += 5;
        if (pos < s.size() && s[pos] == ':') {
            if (!parse_fixed(s, pos + 1, 2, sec)) return std::nullopt;
            pos += 3;
            if (pos < s.size() && (s[pos] == '.' || s[pos] == ',')) {
                ++pos;
                const std::size_t digits = pos;
                while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
                if (pos == digits) return std::nullopt;
            }
        }
        if (h > 23 || mi > 59 || sec > 60) return std::nullopt;
        if (pos < s.size() && s[pos] == 'Z') {
            ++pos;
        } else if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
            int oh = 0, om = 0;
            const int sign = s[pos] == '-' ? -1 : 1;
            if (!parse_fixed(s, pos + 1, 2, oh)) return std::nullopt;
            pos += 3;
            if (pos < s.size() && s[pos] == ':') ++pos;
            if (!parse_fixed(s, pos, 2, om)) return std::nullopt;
            pos += 2;
            offset_seconds = sign * (oh * 3600 + om * 60);
        }
    }
    if (pos != s.size()) return std::nullopt;
    return Instant{sys_days{ymd}} + hours{h} + minutes{mi} + seconds{sec} - seconds{offset_seconds};
}

std::optional<Instant> parse_datetime(std::string_view text, const std::string& format) {
    const std::string buf(trim(text));
    std::tm tm{};
    const char* end = ::strptime(buf.c_str(), format.c_str(), &tm);
    if (end == nullptr || *end != '\0') return std::nullopt;
    return Instant{std::chrono::seconds{::timegm(&tm)}};
}

TimeSeries parse_series_csv(std::string_view text, const CsvReadOptions& options) {
    std::vector<Instant> timestamps;
    std::vector<double> values;
    std::vector<std::size_t> lines;
    std::optional<std::vector<std::string>> header;
    std::size_t time_col = 0;
    std::size_t value_col = 0;

    std::size_t line_no = 0;
    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (trim(line).empty()) continue;

        std::vector<std::string> fields;
        try {
            fields = csv::split_line(line);
        } catch (const Error& e) {
            throw Error(ErrorKind::ParseError, fmt::format("line {}: {}", line_no, e.what()));
        }
        if (!header) {
            header = fields;
            time_col = resolve_column(fields, options.datetime_column, "datetime");
            value_col = resolve_column(fields, options.value_column, "value");
            if (time_col == value_col) {
                throw Error(ErrorKind::ParseError, "line 1: datetime and value columns must differ");
            }
            continue;
        }
        if (fields.size() != header->size()) {
            throw Error(ErrorKind::ParseError, fmt::format("line {}: expected {} fields, got {}", line_no,
                                                           header->size(), fields.size()));
        }
        const std::string_view time_text = trim(fields[time_col]);
        const auto t = options.datetime_format ? parse_datetime(time_text, *options.datetime_format)
                                               : parse_iso8601(time_text);
        if (!t) {
            throw Error(ErrorKind::ParseError,
                        fmt::format("line {}: cannot parse datetime '{}'", line_no, time_text));
        }
        const std::string_view value_text = trim(fields[value_col]);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(value_text.data(), value_text.data() + value_text.size(), v);
        if (value_text.empty() || ec != std::errc{} || ptr != value_text.data() + value_text.size()) {
            throw Error(ErrorKind::ParseError, fmt::format("line {}: value '{}' is not a number", line_no,
                                                           value_text));
        }
        if (!std::isfinite(v)) {
            throw Error(ErrorKind::ParseError, fmt::format("line {}: value '{}' is not finite", line_no,
                                                           value_text));
        }
        if (!timestamps.empty() && *t <= timestamps.back()) {
            throw Error(ErrorKind::ParseError,
                        fmt::format("line {}: timestamp '{}' does not increase (previous row at line {})",
                                    line_no, time_text, lines.back()));
        }
        timestamps.push_back(*t);
        values.push_back(v);
        lines.push_back(line_no);
    }
    if (!header) throw Error(ErrorKind::ParseError, "line 1: missing header row");
    if (values.size() < kMinSeriesLength) {
        throw Error(ErrorKind::ParseError, fmt::format("line {}: only {} data rows, at least {} required",
                                                       line_no, values.size(), kMinSeriesLength));
    }
    return TimeSeries::from_records(std::move(timestamps), std::move(values));
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::IoError, fmt::format("cannot open '{}'", path.string()));
    std::ostringstream ss;
    ss << f.rdbuf();
    if (f.bad()) throw Error(ErrorKind::IoError, fmt::format("failed reading '{}'", path.string()));
    return ss.str();
}

TimeSeries read_series_csv(const std::filesystem::path& path, const CsvReadOptions& options) {
    return parse_series_csv(read_text_file(path), options);
}

}  // namespace stk
