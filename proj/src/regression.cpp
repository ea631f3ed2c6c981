#include "stk/regression.hpp"

#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numbers>

#include "stk/error.hpp"

namespace stk {

namespace {

// Pivots below this fraction of the largest pivot count as zero.
constexpr double kRankThreshold = 1e-10;

}  // namespace

LinearFit ols_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    const Eigen::Index n = X.rows();
    const Eigen::Index k = X.cols();
    if (y.size() != n) {
        throw Error(ErrorKind::DimensionMismatch,
                    fmt::format("design has {} rows, response has {}", n, y.size()));
    }
    if (k < 1 || n <= k) {
        throw Error(ErrorKind::DimensionMismatch,
                    fmt::format("need n > k >= 1, got n={} k={}", n, k));
    }
    if (!X.allFinite() || !y.allFinite()) {
        throw Error(ErrorKind::DimensionMismatch, "non-finite entries in regression input");
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    qr.setThreshold(kRankThreshold);
    const auto rank = static_cast<std::size_t>(qr.rank());
    if (rank < static_cast<std::size_t>(k)) {
        throw Error(ErrorKind::RankDeficient,
                    fmt::format("design matrix has rank {} < {} columns", rank, k));
    }

    LinearFit fit;
    fit.coefficients = qr.solve(y);
    fit.residuals = y - X * fit.coefficients;
    fit.nobs = static_cast<std::size_t>(n);
    fit.rank = rank;
    fit.ssr = fit.residuals.squaredNorm();
    fit.sigma2 = fit.ssr / static_cast<double>(n - k);

    // diag((X'X)^-1) = row norms of R^-1, mapped back through the pivots.
    const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
    const Eigen::MatrixXd r_inv =
        r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
    const auto& perm = qr.colsPermutation().indices();
    fit.standard_errors.resize(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        fit.standard_errors(perm(i)) = std::sqrt(fit.sigma2 * r_inv.row(i).squaredNorm());
    }

    const double nd = static_cast<double>(n);
    fit.loglik = -0.5 * nd * (std::log(2.0 * std::numbers::pi) + std::log(fit.ssr / nd) + 1.0);
    fit.aic = 2.0 * static_cast<double>(k) - 2.0 * fit.loglik;
    return fit;
}

double newey_west_lrv(std::span<const double> u, std::size_t lag) {
    const std::size_t n = u.size();
    if (lag >= n) {
        throw Error(ErrorKind::LagTooLarge,
                    fmt::format("lag {} needs more than {} observations", lag, n));
    }
    const double nd = static_cast<double>(n);
    double gamma0 = 0.0;
    for (double v : u) gamma0 += v * v;
    double total = gamma0 / nd;
    for (std::size_t j = 1; j <= lag; ++j) {
        double acc = 0.0;
        for (std::size_t t = j; t < n; ++t) acc += u[t] * u[t - j];
        const double weight = 1.0 - static_cast<double>(j) / static_cast<double>(lag + 1);
        total += 2.0 * weight * acc / nd;
    }
    return total;
}

std::size_t schwert_maxlag(std::size_t n) noexcept {
    return static_cast<std::size_t>(std::floor(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));
}

AdfDesign build_adf_design(std::span<const double> values, std::size_t lag, TrendSpec spec,
                           std::size_t first_row) {
    const std::size_t n = values.size();
    if (first_row < lag || n < 2 || first_row + 1 >= n) {
        throw Error(ErrorKind::TooShort,
                    fmt::format("no ADF rows for n={} lag={} first_row={}", n, lag, first_row));
    }
    const Eigen::Index rows = static_cast<Eigen::Index>(n - 1 - first_row);
    const Eigen::Index det = deterministic_terms(spec);
    const Eigen::Index cols = 1 + det + static_cast<Eigen::Index>(lag);

    auto diff = [&](std::size_t i) { return values[i + 1] - values[i]; };

    AdfDesign d{Eigen::MatrixXd(rows, cols), Eigen::VectorXd(rows)};
    for (Eigen::Index r = 0; r < rows; ++r) {
        const std::size_t t = first_row + static_cast<std::size_t>(r);
        d.y(r) = diff(t);
        d.X(r, 0) = values[t];
        d.X(r, 1) = 1.0;
        if (spec == TrendSpec::ConstantTrend) d.X(r, 2) = static_cast<double>(t + 1);
        for (std::size_t i = 1; i <= lag; ++i) {
            d.X(r, det + static_cast<Eigen::Index>(i)) = diff(t - i);
        }
    }
    return d;
}

std::size_t select_adf_lag(std::span<const double> values, TrendSpec spec) {
    const std::size_t n = values.size();
    const std::size_t maxlag = schwert_maxlag(n);
    const std::size_t k_max = 1 + static_cast<std::size_t>(deterministic_terms(spec)) + maxlag;
    if (n < maxlag + 2 || n - maxlag - 2 <= k_max) {
        throw Error(ErrorKind::TooShort,
                    fmt::format("n={} too short for ADF lag search up to {}", n, maxlag));
    }
    std::size_t best_lag = 0;
    double best_aic = std::numeric_limits<double>::infinity();
    for (std::size_t lag = 0; lag <= maxlag; ++lag) {
        const AdfDesign d = build_adf_design(values, lag, spec, maxlag);
        const double aic = ols_fit(d.X, d.y).aic;
        if (aic < best_aic) {
            best_aic = aic;
            best_lag = lag;
        }
    }
    return best_lag;
}

}  // namespace stk
