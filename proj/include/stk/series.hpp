#pragma once

#include <chrono>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace stk {

using Instant = std::chrono::sys_seconds;

/// Smallest series accepted by the toolkit. Individual tests may need more and
/// report themselves as skipped.
inline constexpr std::size_t kMinSeriesLength = 20;

/// Validated, immutable (timestamp, value) sequence.
///
/// Timestamps are strictly increasing UTC instants; values are finite. The
/// only way to build one is `from_records`, so every `TimeSeries` in the
/// program satisfies these invariants.
class TimeSeries {
public:
    /// Validates and takes ownership of the records.
    /// Throws `Error` with LengthMismatch, TooShort, NonMonotonicIndex or
    /// NonFiniteValue (the message names the first offending position).
    static TimeSeries from_records(std::vector<Instant> timestamps, std::vector<double> values);

    [[nodiscard]] std::span<const Instant> timestamps() const noexcept { return timestamps_; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }

private:
    TimeSeries(std::vector<Instant> timestamps, std::vector<double> values)
        : timestamps_(std::move(timestamps)), values_(std::move(values)) {}

    std::vector<Instant> timestamps_;
    std::vector<double> values_;
};

enum class FrequencyKind { Hourly, Daily, Weekly, Monthly, Quarterly, Yearly, Unknown };

[[nodiscard]] std::string_view to_string(FrequencyKind kind) noexcept;

struct Frequency {
    FrequencyKind kind = FrequencyKind::Unknown;
    double median_spacing = 0.0;  ///< seconds
};

/// Classifies the median spacing of consecutive timestamps:
/// hourly/daily/weekly within +-5% of the nominal spacing, monthly in
/// [28,31] days, quarterly in [89,93] days, yearly in [360,370] days.
/// Anything else (including irregular sampling) is Unknown.
[[nodiscard]] Frequency infer_frequency(const TimeSeries& ts);
[[nodiscard]] Frequency classify_spacing(double median_spacing_seconds) noexcept;

struct SeasonalPeriod {
    int period = 0;
    std::string_view label;

    friend bool operator==(const SeasonalPeriod&, const SeasonalPeriod&) = default;
};

/// A period is only tested when the series holds at least this many full cycles.
inline constexpr std::size_t kMinSeasonalCycles = 3;

/// Seasonal periods worth testing for a given sampling frequency, ascending,
/// keeping only those with n >= 3 * period.
[[nodiscard]] std::vector<SeasonalPeriod> candidate_periods(const Frequency& freq, std::size_t n);

}  // namespace stk
