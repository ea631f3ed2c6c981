#include "stk/stl.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>

#include "stk/error.hpp"

namespace stk {

namespace {

int smallest_odd_at_least(double x) {
    int v = static_cast<int>(std::ceil(x));
    if (v % 2 == 0) ++v;
    return v;
}

// Positions are 1-based as in the loess formulation: point i of `y` sits at
// abscissa i + 1.
class Loess {
public:
    explicit Loess(std::size_t capacity) : w_(capacity + 1) {}

    // Local polynomial fit of degree 0 or 1 at abscissa xs using points
    // [left, right]; false when all weights vanish.
    bool estimate(std::span<const double> y, int len, int degree, double xs, int left, int right,
                  bool use_rw, std::span<const double> rw, double& out) {
        const int n = static_cast<int>(y.size());
        const double range = static_cast<double>(n) - 1.0;
        double h = std::max(xs - left, right - xs);
        if (len > n) h += static_cast<double>((len - n) / 2);
        const double h9 = 0.999 * h;
        const double h1 = 0.001 * h;

        double total = 0.0;
        for (int j = left; j <= right; ++j) {
            double w = 0.0;
            const double r = std::abs(j - xs);
            if (r <= h9) {
                if (r <= h1) {
                    w = 1.0;
                } else {
                    const double q = r / h;
                    const double c = 1.0 - q * q * q;
                    w = c * c * c;
                }
                if (use_rw) w *= rw[static_cast<std::size_t>(j - 1)];
            }
            w_[static_cast<std::size_t>(j)] = w;
            total += w;
        }
        if (total <= 0.0) return false;
        for (int j = left; j <= right; ++j) w_[static_cast<std::size_t>(j)] /= total;

        if (h > 0.0 && degree > 0) {
            double a = 0.0;
            for (int j = left; j <= right; ++j) a += w_[static_cast<std::size_t>(j)] * j;
            double b = xs - a;
            double c = 0.0;
            for (int j = left; j <= right; ++j) {
                c += w_[static_cast<std::size_t>(j)] * (j - a) * (j - a);
            }
            if (std::sqrt(c) > 0.001 * range) {
                b /= c;
                for (int j = left; j <= right; ++j) {
                    w_[static_cast<std::size_t>(j)] *= b * (j - a) + 1.0;
                }
            }
        }
        double acc = 0.0;
        for (int j = left; j <= right; ++j) acc += w_[static_cast<std::size_t>(j)] * y[static_cast<std::size_t>(j - 1)];
        out = acc;
        return true;
    }

    // Loess smoother evaluated at every point 1..n.
    void smooth(std::span<const double> y, int len, int degree, bool use_rw,
                std::span<const double> rw, std::span<double> out) {
        const int n = static_cast<int>(y.size());
        if (n < 2) {
            out[0] = y[0];
            return;
        }
        const int half = (len + 1) / 2;
        for (int i = 1; i <= n; ++i) {
            int left = 1;
            int right = n;
            if (len < n) {
                left = std::min(std::max(1, i - half + 1), n - len + 1);
                right = left + len - 1;
            }
            double v = 0.0;
            const auto idx = static_cast<std::size_t>(i - 1);
            out[idx] = estimate(y, len, degree, i, left, right, use_rw, rw, v) ? v : y[idx];
        }
    }

private:
    std::vector<double> w_;
};

void moving_average(std::span<const double> x, int len, std::span<double> out) {
    const std::size_t n = x.size();
    const auto l = static_cast<std::size_t>(len);
    const std::size_t count = n - l + 1;
    double v = 0.0;
    for (std::size_t i = 0; i < l; ++i) v += x[i];
    out[0] = v / len;
    for (std::size_t j = 1; j < count; ++j) {
        v += x[j + l - 1] - x[j - 1];
        out[j] = v / len;
    }
}

struct StlWork {
    std::vector<double> detrended, season_ext, lowpass_in, lowpass, ma1, ma2;
    std::vector<double> sub_y, sub_rw, sub_out;
};

// Cycle-subseries smoothing; writes n + 2 * period values (one extra cycle on
// each side).
void smooth_subseries(std::span<const double> y, int period, const StlParams& p, bool use_rw,
                      std::span<const double> rw, std::span<double> season, StlWork& work,
                      Loess& loess) {
    const int n = static_cast<int>(y.size());
    const int ns = p.seasonal_window;
    for (int j = 1; j <= period; ++j) {
        const int k = (n - j) / period + 1;
        work.sub_y.resize(static_cast<std::size_t>(k));
        work.sub_rw.resize(static_cast<std::size_t>(k));
        work.sub_out.resize(static_cast<std::size_t>(k + 2));
        for (int i = 0; i < k; ++i) {
            const auto src = static_cast<std::size_t>(i * period + j - 1);
            work.sub_y[static_cast<std::size_t>(i)] = y[src];
            work.sub_rw[static_cast<std::size_t>(i)] = use_rw ? rw[src] : 1.0;
        }
        std::span<double> out(work.sub_out);
        loess.smooth(work.sub_y, ns, p.seasonal_degree, use_rw, work.sub_rw, out.subspan(1, static_cast<std::size_t>(k)));

        double v = 0.0;
        if (loess.estimate(work.sub_y, ns, p.seasonal_degree, 0.0, 1, std::min(ns, k), use_rw, work.sub_rw, v)) {
            out[0] = v;
        } else {
            out[0] = out[1];
        }
        if (loess.estimate(work.sub_y, ns, p.seasonal_degree, k + 1.0, std::max(1, k - ns + 1), k, use_rw,
                           work.sub_rw, v)) {
            out[static_cast<std::size_t>(k + 1)] = v;
        } else {
            out[static_cast<std::size_t>(k + 1)] = out[static_cast<std::size_t>(k)];
        }
        for (int m = 0; m < k + 2; ++m) {
            season[static_cast<std::size_t>(m * period + j - 1)] = out[static_cast<std::size_t>(m)];
        }
    }
}

void robustness_weights(std::span<const double> y, std::span<const double> fit, std::span<double> rw) {
    const std::size_t n = y.size();
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = std::abs(y[i] - fit[i]);
    std::vector<double> sorted = r;
    const std::size_t mid1 = n / 2;
    const std::size_t mid2 = n - mid1 - 1;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(mid1), sorted.end());
    const double a = sorted[mid1];
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(mid2), sorted.end());
    const double b = sorted[mid2];
    const double cmad = 3.0 * (a + b);
    const double c9 = 0.999 * cmad;
    const double c1 = 0.001 * cmad;
    for (std::size_t i = 0; i < n; ++i) {
        if (r[i] <= c1) {
            rw[i] = 1.0;
        } else if (r[i] <= c9) {
            const double q = r[i] / cmad;
            rw[i] = (1.0 - q * q) * (1.0 - q * q);
        } else {
            rw[i] = 0.0;
        }
    }
}

void check_period(std::size_t n, int period) {
    if (period < 2) throw Error(ErrorKind::BadPeriod, fmt::format("period must be >= 2, got {}", period));
    if (n < 3 * static_cast<std::size_t>(period)) {
        throw Error(ErrorKind::TooShort,
                    fmt::format("period {} needs at least {} points, got {}", period, 3 * period, n));
    }
}

}  // namespace

int StlParams::trend_window(int period) const noexcept {
    return smallest_odd_at_least(1.5 * period / (1.0 - 1.5 / seasonal_window));
}

int StlParams::lowpass_window(int period) noexcept { return smallest_odd_at_least(period); }

Decomposition stl_decompose(std::span<const double> values, int period, bool robust) {
    StlParams p;
    if (robust) p.outer_iterations = 10;
    return stl_decompose(values, period, p);
}

Decomposition stl_decompose(std::span<const double> values, int period, const StlParams& params) {
    const std::size_t n = values.size();
    check_period(n, period);
    StlParams p = params;
    p.seasonal_window = std::max(3, p.seasonal_window);
    if (p.seasonal_window % 2 == 0) ++p.seasonal_window;
    const int nt = p.trend_window(period);
    const int nl = StlParams::lowpass_window(period);
    const auto np = static_cast<std::size_t>(period);

    Decomposition d;
    d.period = period;
    d.method = DecompositionMethod::Stl;
    d.trend.assign(n, 0.0);
    d.seasonal.assign(n, 0.0);

    StlWork work;
    work.detrended.resize(n);
    work.season_ext.resize(n + 2 * np);
    work.ma1.resize(n + np + 1);
    work.ma2.resize(n + 2);
    work.lowpass_in.resize(n);
    work.lowpass.resize(n);
    std::vector<double> rw(n, 1.0);
    std::vector<double> fit(n);
    Loess loess(n + 2 * np + 2);

    bool use_rw = false;
    for (int outer = 0;; ++outer) {
        for (int inner = 0; inner < p.inner_iterations; ++inner) {
            for (std::size_t i = 0; i < n; ++i) work.detrended[i] = values[i] - d.trend[i];
            smooth_subseries(work.detrended, period, p, use_rw, rw, work.season_ext, work, loess);

            // Low-pass filter of the extended seasonal: MA(np), MA(np), MA(3), loess.
            const std::span<const double> ext(work.season_ext);
            moving_average(ext, period, work.ma1);
            moving_average(std::span<const double>(work.ma1).first(n + np + 1), period, work.ma2);
            moving_average(std::span<const double>(work.ma2).first(n + 2), 3, work.lowpass_in);
            loess.smooth(work.lowpass_in, nl, p.lowpass_degree, false, rw, work.lowpass);

            for (std::size_t i = 0; i < n; ++i) {
                d.seasonal[i] = work.season_ext[np + i] - work.lowpass[i];
                work.detrended[i] = values[i] - d.seasonal[i];
            }
            loess.smooth(work.detrended, nt, p.trend_degree, use_rw, rw, d.trend);
        }
        if (outer >= p.outer_iterations) break;
        for (std::size_t i = 0; i < n; ++i) fit[i] = d.trend[i] + d.seasonal[i];
        robustness_weights(values, fit, rw);
        use_rw = true;
    }

    d.remainder.resize(n);
    for (std::size_t i = 0; i < n; ++i) d.remainder[i] = values[i] - d.trend[i] - d.seasonal[i];
    return d;
}

std::vector<double> centered_moving_average(std::span<const double> values, int period) {
    const std::size_t n = values.size();
    const auto half = static_cast<std::size_t>(period / 2);
    std::vector<double> out(n, std::numeric_limits<double>::quiet_NaN());
    if (n < 2 * half + 1) return out;
    const bool even = period % 2 == 0;
    for (std::size_t t = half; t + half < n; ++t) {
        double acc = 0.0;
        if (even) {
            acc = 0.5 * (values[t - half] + values[t + half]);
            for (std::size_t i = t - half + 1; i < t + half; ++i) acc += values[i];
        } else {
            for (std::size_t i = t - half; i <= t + half; ++i) acc += values[i];
        }
        out[t] = acc / period;
    }
    return out;
}

Decomposition periodic_means_decompose(std::span<const double> values, int period) {
    const std::size_t n = values.size();
    check_period(n, period);
    const auto np = static_cast<std::size_t>(period);
    const auto half = np / 2;

    Decomposition d;
    d.period = period;
    d.method = DecompositionMethod::PeriodicMeans;
    d.trend = centered_moving_average(values, period);
    for (std::size_t t = 0; t < half; ++t) d.trend[t] = d.trend[half];
    for (std::size_t t = n - half; t < n; ++t) d.trend[t] = d.trend[n - half - 1];

    std::vector<double> phase_sum(np, 0.0);
    std::vector<double> phase_count(np, 0.0);
    for (std::size_t t = half; t + half < n; ++t) {
        phase_sum[t % np] += values[t] - d.trend[t];
        phase_count[t % np] += 1.0;
    }
    double grand = 0.0;
    for (std::size_t j = 0; j < np; ++j) {
        phase_sum[j] /= phase_count[j];
        grand += phase_sum[j];
    }
    grand /= static_cast<double>(np);

    d.seasonal.resize(n);
    d.remainder.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        d.seasonal[t] = phase_sum[t % np] - grand;
        d.remainder[t] = values[t] - d.trend[t] - d.seasonal[t];
    }
    return d;
}

}  // namespace stk
