#include "stk/series.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fmt/format.h>

#include "stk/error.hpp"

namespace stk {

namespace {

constexpr double kHour = 3600.0;
constexpr double kDay = 86400.0;
constexpr double kWeek = 7.0 * kDay;
constexpr double kRelativeBand = 0.05;

bool within_relative(double value, double nominal) noexcept {
    return std::abs(value - nominal) <= kRelativeBand * nominal;
}

bool within_days(double value, double lo_days, double hi_days) noexcept {
    return value >= lo_days * kDay && value <= hi_days * kDay;
}

}  // namespace

TimeSeries TimeSeries::from_records(std::vector<Instant> timestamps, std::vector<double> values) {
    if (timestamps.size() != values.size()) {
        throw Error(ErrorKind::LengthMismatch,
                    fmt::format("{} timestamps but {} values", timestamps.size(), values.size()));
    }
    if (values.size() < kMinSeriesLength) {
        throw Error(ErrorKind::TooShort, fmt::format("series has {} points, at least {} required",
                                                     values.size(), kMinSeriesLength));
    }
    for (std::size_t i = 1; i < timestamps.size(); ++i) {
        if (timestamps[i] <= timestamps[i - 1]) {
            throw Error(ErrorKind::NonMonotonicIndex,
                        fmt::format("timestamp at position {} does not increase", i));
        }
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw Error(ErrorKind::NonFiniteValue,
                        fmt::format("value at position {} is not finite", i));
        }
    }
    return TimeSeries(std::move(timestamps), std::move(values));
}

std::string_view to_string(FrequencyKind kind) noexcept {
    switch (kind) {
        case FrequencyKind::Hourly: return "hourly";
        case FrequencyKind::Daily: return "daily";
        case FrequencyKind::Weekly: return "weekly";
        case FrequencyKind::Monthly: return "monthly";
        case FrequencyKind::Quarterly: return "quarterly";
        case FrequencyKind::Yearly: return "yearly";
        case FrequencyKind::Unknown: return "unknown";
    }
    return "unknown";
}

Frequency classify_spacing(double spacing) noexcept {
    FrequencyKind kind = FrequencyKind::Unknown;
    if (within_relative(spacing, kHour)) {
        kind = FrequencyKind::Hourly;
    } else if (within_relative(spacing, kDay)) {
        kind = FrequencyKind::Daily;
    } else if (within_relative(spacing, kWeek)) {
        kind = FrequencyKind::Weekly;
    } else if (within_days(spacing, 28, 31)) {
        kind = FrequencyKind::Monthly;
    } else if (within_days(spacing, 89, 93)) {
        kind = FrequencyKind::Quarterly;
    } else if (within_days(spacing, 360, 370)) {
        kind = FrequencyKind::Yearly;
    }
    return {kind, spacing};
}

Frequency infer_frequency(const TimeSeries& ts) {
    const auto stamps = ts.timestamps();
    std::vector<double> spacing;
    spacing.reserve(stamps.size() - 1);
    for (std::size_t i = 1; i < stamps.size(); ++i) {
        spacing.push_back(static_cast<double>((stamps[i] - stamps[i - 1]).count()));
    }
    std::sort(spacing.begin(), spacing.end());
    const std::size_t m = spacing.size();
    const double median =
        m % 2 == 1 ? spacing[m / 2] : 0.5 * (spacing[m / 2 - 1] + spacing[m / 2]);
    return classify_spacing(median);
}

std::vector<SeasonalPeriod> candidate_periods(const Frequency& freq, std::size_t n) {
    std::vector<SeasonalPeriod> all;
    switch (freq.kind) {
        case FrequencyKind::Hourly: all = {{24, "daily"}, {168, "weekly"}}; break;
        case FrequencyKind::Daily: all = {{7, "weekly"}, {30, "monthly"}, {365, "yearly"}}; break;
        case FrequencyKind::Weekly: all = {{52, "yearly"}}; break;
        case FrequencyKind::Monthly: all = {{12, "yearly"}}; break;
        case FrequencyKind::Quarterly: all = {{4, "yearly"}}; break;
        case FrequencyKind::Yearly:
        case FrequencyKind::Unknown: break;
    }
    std::erase_if(all, [n](const SeasonalPeriod& p) {
        return n < kMinSeasonalCycles * static_cast<std::size_t>(p.period);
    });
    return all;
}

}  // namespace stk
