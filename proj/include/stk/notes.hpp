#pragma once

#include <cstddef>
#include <string>
#include <string_view>

// Every human-readable note the toolkit emits. Golden reports depend on these
// strings, so they live in one place.
namespace stk::notes {

inline constexpr std::string_view kUnitRoot = "Unit root detected - consider differencing";
inline constexpr std::string_view kDeterministicTrend =
    "Deterministic trend detected - stationary after detrending";

inline constexpr std::string_view kKpssInterpolated = "p-value is an interpolated bound";
inline constexpr std::string_view kKpssLevelRejected =
    "Stationarity around a constant level rejected - consider differencing or detrending";
inline constexpr std::string_view kKpssTrendRejected =
    "Stationarity around a linear trend rejected - consider differencing";
inline constexpr std::string_view kKpssPerfectFit =
    "Residuals vanish after removing the deterministic terms - statistic set to 0";

inline constexpr std::string_view kZivotAndrewsCaveat = "may flag a break in smooth trends";
inline constexpr std::string_view kZivotAndrewsUnitRoot =
    "Unit root not rejected even allowing for one level break - consider differencing";

inline constexpr std::string_view kBartlettCaveat = "sensitive to non-normality";
inline constexpr std::string_view kSegmentVariance =
    "Variance differs across segments - consider a variance-stabilizing transform (log or Box-Cox)";
inline constexpr std::string_view kArchCaveat =
    "may trigger on autocorrelated levels, not only conditional heteroskedasticity";
inline constexpr std::string_view kArchDetected =
    "Volatility clustering detected - consider modelling the conditional variance (e.g. GARCH)";
inline constexpr std::string_view kVarianceRatioScope =
    "targets monotone variance drift between the first and last thirds";
inline constexpr std::string_view kVarianceRatioDetected =
    "Variance drifts over time - consider a log or Box-Cox transform";

inline constexpr std::string_view kFrequencyUnknown =
    "Frequency unknown - seasonality tests skipped";
inline constexpr std::string_view kNoViablePeriod =
    "Series too short for any seasonal period of its frequency - seasonality tests skipped";

[[nodiscard]] std::string za_break(std::size_t index);
[[nodiscard]] std::string adf_pp_disagree(std::string_view spec_label);
[[nodiscard]] std::string seasonal_cycle(std::string_view label, int period);
[[nodiscard]] std::string seasonal_detected(std::string_view label, int period);
[[nodiscard]] std::string skipped(std::string_view reason);

}  // namespace stk::notes
