#pragma once

#include <cstddef>

#include "stk/regression.hpp"

namespace stk {

/// Critical values at the three conventional levels.
struct CriticalValues {
    double one = 0.0;   ///< alpha = 0.01
    double five = 0.0;  ///< alpha = 0.05
    double ten = 0.0;   ///< alpha = 0.10

    /// Critical value at `alpha`, linear in alpha between the tabulated
    /// levels; alpha is clamped to [0.01, 0.10].
    [[nodiscard]] double at(double alpha) const noexcept;
};

/// Approximate asymptotic p-value of a Dickey-Fuller tau statistic (single
/// integrated regressor), from MacKinnon's (1994) normal-CDF response surface.
[[nodiscard]] double mackinnon_pvalue(double tau, TrendSpec spec) noexcept;

/// Finite-sample Dickey-Fuller critical values for a regression with `nobs`
/// observations, from MacKinnon's (2010) response surfaces.
[[nodiscard]] CriticalValues mackinnon_critical_values(TrendSpec spec, std::size_t nobs) noexcept;

}  // namespace stk
