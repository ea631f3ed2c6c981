#include "stk/mackinnon.hpp"

#include <algorithm>
#include <array>
#include <boost/math/distributions/normal.hpp>

namespace stk {

namespace {

// MacKinnon, J.G. (1994) "Approximate asymptotic distribution functions for
// unit-root and cointegration tests", JBES 12, Table 3, N = 1. The p-value is
// Phi(poly(tau)); the small-p polynomial applies for tau <= tau_star.
struct PValueSurface {
    double tau_max;
    double tau_min;
    double tau_star;
    std::array<double, 3> small_p;  // ascending powers of tau
    std::array<double, 4> large_p;
};

constexpr PValueSurface kSurfaceConstant{
    2.74, -18.83, -1.61, {2.1659, 1.4412, 3.8269e-2}, {1.7339, 9.3202e-1, -1.2745e-1, -1.0368e-2}};

constexpr PValueSurface kSurfaceConstantTrend{
    0.7, -16.18, -2.89, {3.2512, 1.6047, 4.9588e-2}, {2.5261, 6.1654e-1, -3.7956e-1, -6.0285e-2}};

// MacKinnon, J.G. (2010) "Critical values for cointegration tests", Queen's
// Economics Department Working Paper 1227, Table 2, N = 1:
// cv(T) = b0 + b1/T + b2/T^2 + b3/T^3, rows for 1%, 5%, 10%.
using CritSurface = std::array<std::array<double, 4>, 3>;

constexpr CritSurface kCritConstant{{
    {-3.43035, -6.5393, -16.786, -79.433},
    {-2.86154, -2.8903, -4.234, -40.040},
    {-2.56677, -1.5384, -2.809, 0.0},
}};

constexpr CritSurface kCritConstantTrend{{
    {-3.95877, -9.0531, -28.428, -134.155},
    {-3.41049, -4.3904, -9.036, -45.374},
    {-3.12705, -2.5856, -3.925, -22.380},
}};

template <std::size_t N>
double polyval(const std::array<double, N>& coef, double x) noexcept {
    double acc = 0.0;
    for (std::size_t i = N; i-- > 0;) acc = acc * x + coef[i];
    return acc;
}

}  // namespace

double CriticalValues::at(double alpha) const noexcept {
    alpha = std::clamp(alpha, 0.01, 0.10);
    if (alpha <= 0.05) return one + (five - one) * (alpha - 0.01) / 0.04;
    return five + (ten - five) * (alpha - 0.05) / 0.05;
}

double mackinnon_pvalue(double tau, TrendSpec spec) noexcept {
    const PValueSurface& s =
        spec == TrendSpec::ConstantOnly ? kSurfaceConstant : kSurfaceConstantTrend;
    if (tau > s.tau_max) return 1.0;
    if (tau < s.tau_min) return 0.0;
    const double z = tau <= s.tau_star ? polyval(s.small_p, tau) : polyval(s.large_p, tau);
    return boost::math::cdf(boost::math::normal_distribution<double>(), z);
}

CriticalValues mackinnon_critical_values(TrendSpec spec, std::size_t nobs) noexcept {
    const CritSurface& s = spec == TrendSpec::ConstantOnly ? kCritConstant : kCritConstantTrend;
    const double inv = 1.0 / static_cast<double>(nobs);
    return {polyval(s[0], inv), polyval(s[1], inv), polyval(s[2], inv)};
}

}  // namespace stk
