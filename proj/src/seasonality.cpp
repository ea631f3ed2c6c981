#include "stk/seasonality.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numeric>

#include "numeric.hpp"
#include "stk/notes.hpp"

namespace stk {

namespace {

double variance_of(std::span<const double> x) {
    const double m = detail::mean(x);
    double acc = 0.0;
    for (double v : x) acc += (v - m) * (v - m);
    return acc / static_cast<double>(x.size());
}

}  // namespace

std::string_view to_string(SeasonalityTest test) noexcept {
    return test == SeasonalityTest::SeasonalStrength ? "seasonal_strength" : "kruskal_wallis";
}

SeasonalityResult seasonal_strength(const Decomposition& d, std::string_view label, double threshold) {
    const std::size_t n = d.remainder.size();
    std::vector<double> detrended(n);
    std::vector<double> input(n);
    for (std::size_t i = 0; i < n; ++i) {
        detrended[i] = d.seasonal[i] + d.remainder[i];
        input[i] = d.trend[i] + detrended[i];
    }
    const double var_detrended = variance_of(detrended);
    const double scale = detail::centered_norm(input) + detail::norm(input);
    if (!(var_detrended > 0.0) ||
        std::sqrt(var_detrended * static_cast<double>(n)) <= 1e-10 * scale) {
        throw Error(ErrorKind::DegenerateVariance, "seasonal plus remainder has no variance");
    }

    SeasonalityResult r;
    r.test = SeasonalityTest::SeasonalStrength;
    r.period = d.period;
    r.label = std::string(label);
    r.statistic = std::max(0.0, 1.0 - variance_of(d.remainder) / var_detrended);
    r.threshold = threshold;
    r.detected = r.statistic > threshold;
    r.notes.push_back(notes::seasonal_cycle(label, d.period));
    if (r.detected) r.notes.push_back(notes::seasonal_detected(label, d.period));
    return r;
}

std::optional<double> kruskal_wallis_h(std::span<const std::vector<double>> groups) {
    struct Item {
        double value;
        std::size_t group;
    };
    std::vector<Item> items;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        for (double v : groups[g]) items.push_back({v, g});
    }
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.value < b.value; });

    const std::size_t total = items.size();
    std::vector<double> rank_sum(groups.size(), 0.0);
    double tie_term = 0.0;
    for (std::size_t i = 0; i < total;) {
        std::size_t j = i;
        while (j < total && items[j].value == items[i].value) ++j;
        const double avg_rank = 0.5 * static_cast<double>(i + 1 + j);
        for (std::size_t m = i; m < j; ++m) rank_sum[items[m].group] += avg_rank;
        const double t = static_cast<double>(j - i);
        tie_term += t * t * t - t;
        i = j;
    }
    const double nd = static_cast<double>(total);
    const double correction = 1.0 - tie_term / (nd * nd * nd - nd);
    if (!(correction > 0.0)) return std::nullopt;

    double acc = 0.0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        acc += rank_sum[g] * rank_sum[g] / static_cast<double>(groups[g].size());
    }
    const double h = 12.0 / (nd * (nd + 1.0)) * acc - 3.0 * (nd + 1.0);
    return std::max(0.0, h / correction);
}

double detrend_variance_factor(int period) noexcept {
    const double p = period;
    const double w = 1.0 / p;
    // Sum of squared filter weights: p equal weights for odd periods; p - 1
    // full weights and two half weights for even ones.
    const double sum_sq = period % 2 == 1 ? 1.0 / p : (p - 1.0 + 0.5) / (p * p);
    return 1.0 - 2.0 * w + sum_sq;
}

SeasonalityResult kruskal_wallis_seasonal(std::span<const double> values, int period,
                                          std::string_view label, double alpha) {
    if (period < 2) throw Error(ErrorKind::BadPeriod, fmt::format("period must be >= 2, got {}", period));
    const std::size_t n = values.size();
    const auto np = static_cast<std::size_t>(period);
    if (n < 3 * np) {
        throw Error(ErrorKind::TooShort,
                    fmt::format("period {} needs at least {} points, got {}", period, 3 * period, n));
    }
    const std::vector<double> trend = centered_moving_average(values, period);
    const std::size_t half = np / 2;

    std::vector<std::vector<double>> groups(np);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t t = half; t + half < n; ++t) {
        const double v = values[t] - trend[t];
        groups[t % np].push_back(v);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    for (std::size_t g = 0; g < np; ++g) {
        if (groups[g].size() < 3) {
            throw Error(ErrorKind::TooShort,
                        fmt::format("phase {} of period {} has only {} detrended points", g, period,
                                    groups[g].size()));
        }
    }
    double scale = 0.0;
    for (double v : values) scale = std::max(scale, std::abs(v));
    if (hi - lo <= 1e-12 * scale) {
        throw Error(ErrorKind::AllTied, "all detrended values are identical");
    }
    const auto h = kruskal_wallis_h(groups);
    if (!h) throw Error(ErrorKind::AllTied, "all detrended values are identical");

    SeasonalityResult r;
    r.test = SeasonalityTest::KruskalWallis;
    r.period = period;
    r.label = std::string(label);
    r.statistic = *h;
    r.p_value = boost::math::cdf(boost::math::complement(
        boost::math::chi_squared_distribution<double>(static_cast<double>(period - 1)),
        detrend_variance_factor(period) * r.statistic));
    r.detected = *r.p_value < alpha;
    r.notes.push_back(notes::seasonal_cycle(label, period));
    if (r.detected) r.notes.push_back(notes::seasonal_detected(label, period));
    return r;
}

Outcome<SeasonalityResult> run_seasonality_test(std::span<const double> values,
                                                const SeasonalPeriod& period, SeasonalityTest test,
                                                const SeasonalityOptions& options) {
    try {
        if (test == SeasonalityTest::SeasonalStrength) {
            const Decomposition d = stl_decompose(values, period.period, options.stl_robust);
            return seasonal_strength(d, period.label, options.strength_threshold);
        }
        return kruskal_wallis_seasonal(values, period.period, period.label, options.alpha);
    } catch (const Error& e) {
        return Skipped{std::string(to_string(test)), std::string(period.label), e.kind(), e.what()};
    }
}

SeasonalityBattery detect_seasonality(std::span<const double> values,
                                      std::span<const SeasonalPeriod> periods,
                                      const SeasonalityOptions& options) {
    SeasonalityBattery out;
    if (periods.empty()) {
        out.notes.emplace_back(notes::kFrequencyUnknown);
        return out;
    }
    std::vector<SeasonalPeriod> sorted(periods.begin(), periods.end());
    std::sort(sorted.begin(), sorted.end(),
              [](const SeasonalPeriod& a, const SeasonalPeriod& b) { return a.period < b.period; });
    for (const auto& p : sorted) {
        out.results.push_back(run_seasonality_test(values, p, SeasonalityTest::SeasonalStrength, options));
        out.results.push_back(run_seasonality_test(values, p, SeasonalityTest::KruskalWallis, options));
    }
    return out;
}

}  // namespace stk
