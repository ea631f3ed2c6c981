#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stk/error.hpp"
#include "stk/series.hpp"
#include "stk/stl.hpp"

namespace stk {

enum class SeasonalityTest { SeasonalStrength, KruskalWallis };

[[nodiscard]] std::string_view to_string(SeasonalityTest test) noexcept;

inline constexpr double kDefaultSeasonalStrengthThreshold = 0.6;

/// `seasonal_strength` carries a threshold and no p-value; `kruskal_wallis`
/// carries a p-value and no threshold.
struct SeasonalityResult {
    SeasonalityTest test = SeasonalityTest::SeasonalStrength;
    int period = 0;
    std::string label;
    double statistic = 0.0;
    std::optional<double> p_value;
    std::optional<double> threshold;
    bool detected = false;
    std::vector<std::string> notes;
};

/// F_s = max(0, 1 - Var(remainder) / Var(seasonal + remainder)); detected
/// when F_s exceeds `threshold`. Throws DegenerateVariance when the
/// seasonal-plus-remainder part has no variance (relative to the input scale).
[[nodiscard]] SeasonalityResult seasonal_strength(const Decomposition& d, std::string_view label,
                                                  double threshold = kDefaultSeasonalStrengthThreshold);

/// Kruskal-Wallis H (tie-corrected) across phase groups t mod period of the
/// series minus its centred moving average. Throws TooShort when a phase
/// group has fewer than 3 members and AllTied when every detrended value is
/// the same.
///
/// The statistic is the plain H of the detrended groups. Subtracting the
/// moving average shrinks the within-group spread by
/// `detrend_variance_factor(period)` while leaving the between-phase spread
/// alone, so H is referred to chi-square(period - 1) after multiplying by that
/// factor; without it the test rejects about 9% of white-noise series at the
/// 5% level for weekly data.
[[nodiscard]] SeasonalityResult kruskal_wallis_seasonal(std::span<const double> values, int period,
                                                        std::string_view label, double alpha = 0.05);

/// Variance of x_t minus its centred moving average, relative to Var(x_t),
/// for white noise: 1 - 2 w_0 + sum w_j^2 with w_0 = 1/period.
[[nodiscard]] double detrend_variance_factor(int period) noexcept;

/// Tie-corrected Kruskal-Wallis H over arbitrary groups; nullopt when every
/// value is tied.
[[nodiscard]] std::optional<double> kruskal_wallis_h(std::span<const std::vector<double>> groups);

struct SeasonalityOptions {
    double alpha = 0.05;
    double strength_threshold = kDefaultSeasonalStrengthThreshold;
    bool stl_robust = false;
};

struct SeasonalityBattery {
    /// Two entries per period (seasonal_strength, then kruskal_wallis), in
    /// ascending period order; failures are `Skipped` entries.
    std::vector<Outcome<SeasonalityResult>> results;
    /// Series-level notes (e.g. unknown frequency).
    std::vector<std::string> notes;
};

[[nodiscard]] SeasonalityBattery detect_seasonality(std::span<const double> values,
                                                    std::span<const SeasonalPeriod> periods,
                                                    const SeasonalityOptions& options = {});

/// Runs one seasonality test for one period, turning library errors into a
/// `Skipped` outcome.
[[nodiscard]] Outcome<SeasonalityResult> run_seasonality_test(std::span<const double> values,
                                                              const SeasonalPeriod& period,
                                                              SeasonalityTest test,
                                                              const SeasonalityOptions& options);

inline SeasonalityBattery detect_seasonality(const TimeSeries& ts,
                                             std::span<const SeasonalPeriod> periods,
                                             const SeasonalityOptions& options = {}) {
    return detect_seasonality(ts.values(), periods, options);
}

}  // namespace stk
