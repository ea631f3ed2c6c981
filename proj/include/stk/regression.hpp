#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <span>

namespace stk {

/// Artifacts of an ordinary least-squares fit.
///
/// `sigma2` is the unbiased residual variance SSR/(n-k) and drives `standard_errors`.
/// `loglik` is the Gaussian log-likelihood evaluated at the MLE variance
/// SSR/n, so `aic = 2k - 2 loglik` matches the usual lag-selection convention.
struct LinearFit {
    Eigen::VectorXd coefficients;
    Eigen::VectorXd residuals;
    Eigen::VectorXd standard_errors;
    double ssr = 0.0;
    double sigma2 = 0.0;
    double loglik = 0.0;
    double aic = 0.0;
    std::size_t nobs = 0;
    std::size_t rank = 0;

    /// t-ratio of coefficient `i`.
    [[nodiscard]] double t_ratio(Eigen::Index i) const { return coefficients(i) / standard_errors(i); }
};

/// Least squares through a column-pivoted Householder QR factorization.
/// Throws `Error` with DimensionMismatch (n <= k, k == 0, row mismatch,
/// non-finite input) or RankDeficient (numerical rank < k).
[[nodiscard]] LinearFit ols_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y);

/// Bartlett-kernel long-run variance
///   gamma_0 + 2 * sum_{j=1..lag} (1 - j/(lag+1)) gamma_j,
///   gamma_j = (1/n) sum_t u_t u_{t-j}.
/// The input is used as given (callers demean when needed).
/// Throws `Error(LagTooLarge)` when lag >= len(u).
[[nodiscard]] double newey_west_lrv(std::span<const double> u, std::size_t lag);

enum class TrendSpec { ConstantOnly, ConstantTrend };

/// Number of deterministic regressors (constant, optional trend).
[[nodiscard]] constexpr Eigen::Index deterministic_terms(TrendSpec spec) noexcept {
    return spec == TrendSpec::ConstantOnly ? 1 : 2;
}

/// floor(12 * (n/100)^(1/4)); used both as the ADF maximum lag and as the
/// KPSS truncation lag.
[[nodiscard]] std::size_t schwert_maxlag(std::size_t n) noexcept;

/// Design of the augmented Dickey-Fuller regression
///   dy_t = c [+ b t] + gamma y_{t-1} + sum_{i=1..lag} delta_i dy_{t-i} + e_t.
/// Column 0 is y_{t-1}, then the constant, the optional trend, then the
/// lagged differences. Rows start at difference index `first_row`
/// (must be >= lag), so several lags can share a common sample.
struct AdfDesign {
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
};

[[nodiscard]] AdfDesign build_adf_design(std::span<const double> values, std::size_t lag,
                                         TrendSpec spec, std::size_t first_row);

/// AIC lag choice over 0..schwert_maxlag(n), every candidate fitted on the
/// common sample that starts at maxlag. Ties keep the smaller lag.
/// Throws TooShort when n - maxlag - 2 <= k for the largest regression and
/// propagates RankDeficient.
[[nodiscard]] std::size_t select_adf_lag(std::span<const double> values, TrendSpec spec);

}  // namespace stk
