#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <vector>

#include "stk/series.hpp"
#include "stk/synth.hpp"

namespace stk::testing {

inline std::vector<Instant> daily_instants(std::size_t n, std::int64_t spacing_seconds = 86400) {
    std::vector<Instant> t;
    t.reserve(n);
    const Instant start{std::chrono::sys_days{std::chrono::year{2020} / 1 / 1}};
    for (std::size_t i = 0; i < n; ++i) {
        t.push_back(start + std::chrono::seconds{static_cast<std::int64_t>(i) * spacing_seconds});
    }
    return t;
}

inline TimeSeries daily(std::vector<double> values) {
    const auto n = values.size();
    return TimeSeries::from_records(daily_instants(n), std::move(values));
}

inline std::vector<double> iid_normal(std::size_t n, std::uint64_t seed, double sd = 1.0) {
    Rng rng(seed);
    std::vector<double> v(n);
    for (auto& x : v) x = sd * rng.normal();
    return v;
}

inline std::vector<double> random_walk(std::size_t n, std::uint64_t seed) {
    auto v = iid_normal(n, seed);
    for (std::size_t i = 1; i < n; ++i) v[i] += v[i - 1];
    return v;
}

inline std::vector<double> ar1(std::size_t n, double phi, std::uint64_t seed) {
    auto v = iid_normal(n, seed);
    for (std::size_t i = 1; i < n; ++i) v[i] += phi * v[i - 1];
    return v;
}

/// Fixed recipe behind the golden markdown and CSV files in tests/data.
inline SynthSpec golden_spec() {
    SynthSpec spec;
    spec.n = 400;
    spec.baseline = 10.0;
    spec.trend_slope = 0.02;
    spec.seasonal_amplitude = 1.5;
    spec.seasonal_period = 7;
    spec.noise_sigma = 1.0;
    spec.ar_coefficient = 0.3;
    spec.seed = 42;
    return spec;
}

inline double rel_diff(double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

}  // namespace stk::testing
