#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace stk {

enum class DecompositionMethod { Stl, PeriodicMeans };

/// Additive decomposition values = trend + seasonal + remainder.
struct Decomposition {
    std::vector<double> trend;
    std::vector<double> seasonal;
    std::vector<double> remainder;
    int period = 0;
    DecompositionMethod method = DecompositionMethod::Stl;
};

struct StlParams {
    int seasonal_window = 7;  ///< odd, >= 3
    int seasonal_degree = 0;
    int trend_degree = 1;
    int lowpass_degree = 1;
    int inner_iterations = 2;
    int outer_iterations = 0;  ///< 0 = non-robust

    /// Smallest odd integer >= 1.5 period / (1 - 1.5 / seasonal_window).
    [[nodiscard]] int trend_window(int period) const noexcept;
    /// Smallest odd integer >= period.
    [[nodiscard]] static int lowpass_window(int period) noexcept;
};

/// STL seasonal-trend decomposition by loess (Cleveland et al., 1990),
/// evaluated at every point (no jump interpolation). `robust` switches on
/// 10 outer iterations of bisquare robustness weights.
/// Throws `Error` with BadPeriod (period < 2) or TooShort (n < 3 period).
[[nodiscard]] Decomposition stl_decompose(std::span<const double> values, int period,
                                          bool robust = false);

[[nodiscard]] Decomposition stl_decompose(std::span<const double> values, int period,
                                          const StlParams& params);

/// Classical decomposition: centred moving-average trend, seasonal = phase
/// means of the detrended values, centred to sum to zero over a cycle. The
/// trend at the edges (where the moving average is undefined) is the nearest
/// defined value.
[[nodiscard]] Decomposition periodic_means_decompose(std::span<const double> values, int period);

/// Centred moving average of width `period` (2 x period for even periods,
/// halving the end weights). Defined for indices [half, n - half), where
/// half = period / 2; entries outside are NaN.
[[nodiscard]] std::vector<double> centered_moving_average(std::span<const double> values, int period);

}  // namespace stk
