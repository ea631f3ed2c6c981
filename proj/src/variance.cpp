#include "stk/variance.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>
#include <cmath>
#include <fmt/format.h>

#include "numeric.hpp"
#include "stk/error.hpp"
#include "stk/notes.hpp"
#include "stk/regression.hpp"

namespace stk {

namespace {

constexpr std::size_t kMinSegmentLength = 10;

double chi2_upper(double x, double df) {
    if (x <= 0.0) return 1.0;
    return boost::math::cdf(boost::math::complement(boost::math::chi_squared_distribution<double>(df), x));
}

double f_upper(double x, double d1, double d2) {
    if (x <= 0.0) return 1.0;
    return boost::math::cdf(boost::math::complement(boost::math::fisher_f_distribution<double>(d1, d2), x));
}

void check_segments(std::span<const std::span<const double>> segments) {
    if (segments.size() < 2) {
        throw Error(ErrorKind::BadK, fmt::format("need at least 2 segments, got {}", segments.size()));
    }
    for (std::size_t j = 0; j < segments.size(); ++j) {
        if (segments[j].size() < kMinSegmentLength) {
            throw Error(ErrorKind::TooShort, fmt::format("segment {} has {} points, need {}", j,
                                                         segments[j].size(), kMinSegmentLength));
        }
    }
}

double median(std::vector<double> x) {
    const std::size_t m = x.size();
    std::nth_element(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(m / 2), x.end());
    const double upper = x[m / 2];
    if (m % 2 == 1) return upper;
    const double lower = *std::max_element(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(m / 2));
    return 0.5 * (lower + upper);
}

}  // namespace

std::string_view to_string(VarianceTest test) noexcept {
    switch (test) {
        case VarianceTest::Levene: return "levene";
        case VarianceTest::Bartlett: return "bartlett";
        case VarianceTest::ArchLm: return "arch_lm";
        case VarianceTest::VarianceRatio: return "variance_ratio";
    }
    return "unknown";
}

Segments split_segments(std::span<const double> values, std::size_t k) {
    if (k < 2) throw Error(ErrorKind::BadK, fmt::format("k must be >= 2, got {}", k));
    const std::size_t n = values.size();
    if (n < kMinSegmentLength * k) {
        throw Error(ErrorKind::TooShort,
                    fmt::format("{} segments need at least {} points, got {}", k, kMinSegmentLength * k, n));
    }
    Segments out;
    out.reserve(k);
    const std::size_t base = n / k;
    const std::size_t extra = n % k;
    std::size_t offset = 0;
    for (std::size_t j = 0; j < k; ++j) {
        const std::size_t len = base + (j < extra ? 1 : 0);
        out.push_back(values.subspan(offset, len));
        offset += len;
    }
    return out;
}

VarianceResult levene_test(std::span<const std::span<const double>> segments, double alpha) {
    check_segments(segments);
    const std::size_t k = segments.size();

    std::vector<std::vector<double>> z(k);
    std::size_t total = 0;
    for (std::size_t j = 0; j < k; ++j) {
        const double med = median({segments[j].begin(), segments[j].end()});
        z[j].reserve(segments[j].size());
        for (double v : segments[j]) z[j].push_back(std::abs(v - med));
        total += segments[j].size();
    }

    std::vector<double> group_mean(k);
    double grand = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        group_mean[j] = detail::mean(z[j]);
        grand += group_mean[j] * static_cast<double>(z[j].size());
    }
    grand /= static_cast<double>(total);

    double between = 0.0;
    double within = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        between += static_cast<double>(z[j].size()) * (group_mean[j] - grand) * (group_mean[j] - grand);
        for (double v : z[j]) within += (v - group_mean[j]) * (v - group_mean[j]);
    }
    if (!(within > 0.0)) {
        throw Error(ErrorKind::DegenerateSegment,
                    "absolute deviations from the segment medians have no spread");
    }

    const double d1 = static_cast<double>(k - 1);
    const double d2 = static_cast<double>(total - k);
    VarianceResult r;
    r.test = VarianceTest::Levene;
    r.statistic = (between / d1) / (within / d2);
    r.p_value = f_upper(r.statistic, d1, d2);
    r.df = {d1, d2};
    r.segments = k;
    r.detected = r.p_value < alpha;
    if (r.detected) r.notes.emplace_back(notes::kSegmentVariance);
    return r;
}

VarianceResult bartlett_test(std::span<const std::span<const double>> segments, double alpha) {
    check_segments(segments);
    const std::size_t k = segments.size();

    double pooled_num = 0.0;
    double sum_log = 0.0;
    double sum_inv = 0.0;
    std::size_t total = 0;
    for (std::size_t j = 0; j < k; ++j) {
        const double var = detail::sample_variance(segments[j]);
        if (!(var > 0.0)) {
            throw Error(ErrorKind::ZeroVariance, fmt::format("segment {} has zero variance", j));
        }
        const double dof = static_cast<double>(segments[j].size() - 1);
        pooled_num += dof * var;
        sum_log += dof * std::log(var);
        sum_inv += 1.0 / dof;
        total += segments[j].size();
    }
    const double dof_total = static_cast<double>(total - k);
    const double pooled = pooled_num / dof_total;
    const double correction =
        1.0 + (sum_inv - 1.0 / dof_total) / (3.0 * static_cast<double>(k - 1));

    VarianceResult r;
    r.test = VarianceTest::Bartlett;
    r.statistic = std::max(0.0, (dof_total * std::log(pooled) - sum_log) / correction);
    r.df = {static_cast<double>(k - 1), std::nullopt};
    r.p_value = chi2_upper(r.statistic, r.df.df1);
    r.segments = k;
    r.detected = r.p_value < alpha;
    if (r.detected) r.notes.emplace_back(notes::kSegmentVariance);
    r.notes.emplace_back(notes::kBartlettCaveat);
    return r;
}

std::size_t default_arch_lags(std::size_t n) noexcept { return std::min<std::size_t>(10, n / 20); }

VarianceResult arch_lm_test(std::span<const double> values, std::optional<std::size_t> lags,
                            double alpha) {
    const std::size_t n = values.size();
    const std::size_t q = lags.value_or(default_arch_lags(n));
    if (q < 1) throw Error(ErrorKind::TooShort, "ARCH LM needs at least one lag");
    if (n < q + 30) {
        throw Error(ErrorKind::TooShort,
                    fmt::format("ARCH LM with {} lags needs n >= {}, got {}", q, q + 30, n));
    }

    const double m = detail::mean(values);
    std::vector<double> sq(n);
    for (std::size_t t = 0; t < n; ++t) sq[t] = (values[t] - m) * (values[t] - m);

    const auto rows = static_cast<Eigen::Index>(n - q);
    Eigen::MatrixXd X(rows, static_cast<Eigen::Index>(q + 1));
    Eigen::VectorXd y(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const std::size_t t = q + static_cast<std::size_t>(r);
        y(r) = sq[t];
        X(r, 0) = 1.0;
        for (std::size_t i = 1; i <= q; ++i) X(r, static_cast<Eigen::Index>(i)) = sq[t - i];
    }
    const double sst = (y.array() - y.mean()).square().sum();
    if (!(sst > 0.0)) {
        throw Error(ErrorKind::DegenerateVariance, "squared deviations are constant");
    }
    const LinearFit fit = ols_fit(X, y);
    const double r2 = std::clamp(1.0 - fit.ssr / sst, 0.0, 1.0);

    VarianceResult r;
    r.test = VarianceTest::ArchLm;
    r.statistic = static_cast<double>(rows) * r2;
    r.df = {static_cast<double>(q), std::nullopt};
    r.p_value = chi2_upper(r.statistic, r.df.df1);
    r.lags = q;
    r.detected = r.p_value < alpha;
    if (r.detected) r.notes.emplace_back(notes::kArchDetected);
    r.notes.emplace_back(notes::kArchCaveat);
    return r;
}

double f_two_sided_pvalue(double f, double d1, double d2) {
    const boost::math::fisher_f_distribution<double> dist(d1, d2);
    const double lower = boost::math::cdf(dist, f);
    const double upper = boost::math::cdf(boost::math::complement(dist, f));
    return std::min(1.0, 2.0 * std::min(lower, upper));
}

VarianceResult variance_ratio_test(std::span<const double> values, double alpha) {
    const std::size_t n = values.size();
    if (n < 60) {
        throw Error(ErrorKind::TooShort, fmt::format("variance ratio test needs n >= 60, got {}", n));
    }
    const std::size_t third = n / 3;
    const auto early = values.first(third);
    const auto late = values.last(third);
    const double var_early = detail::sample_variance(early);
    const double var_late = detail::sample_variance(late);
    if (!(var_early > 0.0)) {
        throw Error(ErrorKind::ZeroVariance, "first third of the series has zero variance");
    }

    VarianceResult r;
    r.test = VarianceTest::VarianceRatio;
    r.statistic = var_late / var_early;
    r.df = {static_cast<double>(late.size() - 1), static_cast<double>(early.size() - 1)};
    r.p_value = f_two_sided_pvalue(r.statistic, r.df.df1, *r.df.df2);
    r.segments = 2;
    r.detected = r.p_value < alpha;
    if (r.detected) r.notes.emplace_back(notes::kVarianceRatioDetected);
    r.notes.emplace_back(notes::kVarianceRatioScope);
    return r;
}

}  // namespace stk
