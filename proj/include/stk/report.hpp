#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stk/execution.hpp"
#include "stk/mackinnon.hpp"
#include "stk/seasonality.hpp"
#include "stk/series.hpp"
#include "stk/trend.hpp"

namespace stk {

enum class Category { Trend, Variance, Seasonality };
enum class Verdict { StationaryCompatible, NonStationarityDetected, Skipped, Inconclusive };

[[nodiscard]] std::string_view to_string(Category c) noexcept;
[[nodiscard]] std::string_view to_string(Verdict v) noexcept;
[[nodiscard]] std::optional<Category> parse_category(std::string_view s) noexcept;
[[nodiscard]] std::optional<Verdict> parse_verdict(std::string_view s) noexcept;

/// One row of the report.
/// Invariants: verdict == Skipped iff statistic is absent; a
/// NonStationarityDetected row always carries at least one note.
struct TestResult {
    std::string test_id;
    Category category = Category::Trend;
    std::optional<std::string> spec_or_period;
    std::string null_hypothesis;
    std::optional<double> statistic;
    std::optional<double> p_value;
    std::optional<CriticalValues> critical_values;
    std::optional<double> threshold;
    std::optional<std::size_t> lags;
    std::optional<std::size_t> break_index;
    std::optional<int> period;
    double alpha = 0.05;
    Verdict verdict = Verdict::Skipped;
    std::vector<std::string> notes;
};

struct DetectConfig {
    double alpha = 0.05;                 ///< (0, 0.5]
    std::size_t variance_segments = 2;   ///< 2..6
    std::optional<std::size_t> arch_lags;
    double seasonal_strength_threshold = kDefaultSeasonalStrengthThreshold;
    bool stl_robust = false;
};

/// Throws `Error(BadSpec)` when a field is out of range.
void validate(const DetectConfig& config);

struct CategorySummary {
    std::size_t rows = 0;
    std::size_t tests_run = 0;
    std::size_t detections = 0;
    std::size_t skipped = 0;
};

struct DiagnosticsReport {
    std::size_t n = 0;
    Instant start;
    Instant end;
    Frequency frequency;
    double alpha = 0.05;
    TrendDiagnosis trend_diagnosis;
    /// Trend rows (adf, kpss, pp under both specs, then zivot_andrews),
    /// variance rows, then seasonality rows by ascending period.
    std::vector<TestResult> results;
    std::array<CategorySummary, 3> category_summary{};
    std::string overall_note;
    /// Series-level notes, e.g. why seasonality was not tested.
    std::vector<std::string> notes;

    [[nodiscard]] const CategorySummary& summary(Category c) const {
        return category_summary[static_cast<std::size_t>(c)];
    }
};

/// Runs the whole battery. Individual test failures become skipped rows; only
/// an invalid config throws. Serial and parallel execution produce identical
/// reports.
[[nodiscard]] DiagnosticsReport detect_all(const TimeSeries& ts, const DetectConfig& config = {},
                                           Execution exec = Execution::Serial);

/// One-paragraph summary: per-category detection counts, the trend diagnosis
/// and the number of skipped tests.
[[nodiscard]] std::string summarize(const DiagnosticsReport& report);

/// Flat record of a row, columns in CSV order.
struct TableRecord {
    std::string test_id;
    std::string category;
    std::string spec_or_period;
    std::optional<double> statistic;
    std::optional<double> p_value;
    double alpha = 0.05;
    std::string verdict;
    std::string notes;  ///< joined with "; "

    friend bool operator==(const TableRecord&, const TableRecord&) = default;
};

inline constexpr std::array<std::string_view, 8> kTableColumns{
    "test_id", "category", "spec_or_period", "statistic", "p_value", "alpha", "verdict", "notes"};

[[nodiscard]] std::vector<TableRecord> to_table(const DiagnosticsReport& report);

/// CSV with a header row; doubles in shortest round-trip form, so parsing the
/// text back yields identical records.
[[nodiscard]] std::string to_csv(const std::vector<TableRecord>& records);
[[nodiscard]] std::vector<TableRecord> parse_table_csv(std::string_view text);

[[nodiscard]] std::string to_json(const std::vector<TableRecord>& records);
[[nodiscard]] std::vector<TableRecord> parse_table_json(std::string_view text);

/// Markdown report with fixed sections (Summary, Trend, Variance,
/// Seasonality, Notes). When `path` is given the identical bytes are written
/// there; throws `Error(FileWriteError)` if that fails.
std::string to_markdown(const DiagnosticsReport& report,
                        const std::optional<std::filesystem::path>& path = std::nullopt);

/// Writes `text` verbatim; throws `Error(FileWriteError)`.
void write_text_file(const std::filesystem::path& path, std::string_view text);

[[nodiscard]] std::string format_iso8601(Instant t);

}  // namespace stk
