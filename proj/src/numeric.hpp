#pragma once

#include <cmath>
#include <numeric>
#include <span>

namespace stk::detail {

inline double mean(std::span<const double> x) noexcept {
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

/// Unbiased sample variance.
inline double sample_variance(std::span<const double> x) noexcept {
    const double m = mean(x);
    double acc = 0.0;
    for (double v : x) acc += (v - m) * (v - m);
    return acc / static_cast<double>(x.size() - 1);
}

inline double centered_norm(std::span<const double> x) noexcept {
    const double m = mean(x);
    double acc = 0.0;
    for (double v : x) acc += (v - m) * (v - m);
    return std::sqrt(acc);
}

inline double norm(std::span<const double> x) noexcept {
    double acc = 0.0;
    for (double v : x) acc += v * v;
    return std::sqrt(acc);
}

/// True when `residual_norm` is rounding noise relative to the input: either
/// the input itself is constant to machine precision, or the residual is
/// below 1e-10 of the input's centered norm.
inline bool negligible(double residual_norm, std::span<const double> input) noexcept {
    const double spread = centered_norm(input);
    if (spread <= 1e-14 * norm(input)) return true;
    return residual_norm <= 1e-10 * spread;
}

}  // namespace stk::detail
