#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stk/series.hpp"

namespace stk {

enum class VarianceTest { Levene, Bartlett, ArchLm, VarianceRatio };

[[nodiscard]] std::string_view to_string(VarianceTest test) noexcept;

struct DegreesOfFreedom {
    double df1 = 0.0;
    std::optional<double> df2;  ///< present for F-distributed statistics
};

/// Outcome of a variance-stationarity test. All four tests take
/// non-stationarity as the alternative, so `detected == (p_value < alpha)`.
struct VarianceResult {
    VarianceTest test = VarianceTest::Levene;
    double statistic = 0.0;
    double p_value = 1.0;
    DegreesOfFreedom df;
    std::optional<std::size_t> segments;
    std::optional<std::size_t> lags;  ///< ARCH LM only
    bool detected = false;
    std::vector<std::string> notes;
};

using Segments = std::vector<std::span<const double>>;

/// k contiguous slices whose lengths differ by at most one; the remainder
/// goes to the earliest slices. Needs k >= 2 (BadK) and n >= 10 k (TooShort).
[[nodiscard]] Segments split_segments(std::span<const double> values, std::size_t k);

/// Brown-Forsythe (median-centred Levene) test: one-way ANOVA on |x - median_j|.
[[nodiscard]] VarianceResult levene_test(std::span<const std::span<const double>> segments,
                                         double alpha = 0.05);

/// Bartlett's test for equal variances, chi-square with k - 1 df.
[[nodiscard]] VarianceResult bartlett_test(std::span<const std::span<const double>> segments,
                                           double alpha = 0.05);

/// Default ARCH LM lag count: min(10, floor(n/20)).
[[nodiscard]] std::size_t default_arch_lags(std::size_t n) noexcept;

/// Engle's LM test on the demeaned series: regress e_t^2 on a constant and
/// q lags of e^2, LM = (n - q) R^2 ~ chi-square(q). Needs n - q >= 30.
[[nodiscard]] VarianceResult arch_lm_test(std::span<const double> values,
                                          std::optional<std::size_t> lags = std::nullopt,
                                          double alpha = 0.05);

/// Two-sided F test of the last third's variance against the first third's.
/// Needs n >= 60.
[[nodiscard]] VarianceResult variance_ratio_test(std::span<const double> values,
                                                 double alpha = 0.05);

/// Two-sided F(d1, d2) p-value 2 min(P(F <= f), P(F >= f)), capped at 1.
[[nodiscard]] double f_two_sided_pvalue(double f, double d1, double d2);

inline Segments split_segments(const TimeSeries& ts, std::size_t k) {
    return split_segments(ts.values(), k);
}
inline VarianceResult arch_lm_test(const TimeSeries& ts,
                                   std::optional<std::size_t> lags = std::nullopt,
                                   double alpha = 0.05) {
    return arch_lm_test(ts.values(), lags, alpha);
}
inline VarianceResult variance_ratio_test(const TimeSeries& ts, double alpha = 0.05) {
    return variance_ratio_test(ts.values(), alpha);
}

}  // namespace stk
