#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "helpers.hpp"
#include "stk/error.hpp"
#include "stk/stl.hpp"

using namespace stk;
using namespace stk::testing;

namespace {

double sumsq(const std::vector<double>& v) {
    return std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
}

void check_additive(std::span<const double> y, const Decomposition& d) {
    REQUIRE(d.trend.size() == y.size());
    REQUIRE(d.seasonal.size() == y.size());
    REQUIRE(d.remainder.size() == y.size());
    double norm = 0;
    for (double v : y) norm += v * v;
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < y.size(); ++i) {
        CHECK(std::abs(d.trend[i] + d.seasonal[i] + d.remainder[i] - y[i]) <= 1e-8 * std::max(norm, 1.0));
    }
}

}  // namespace

TEST_CASE("STL window rules") {
    const StlParams p;
    CHECK(p.trend_window(7) == 15);
    CHECK(p.trend_window(12) == 23);
    CHECK(StlParams::lowpass_window(7) == 7);
    CHECK(StlParams::lowpass_window(12) == 13);
}

TEST_CASE("STL recovers a pure sinusoid") {
    std::vector<double> y(210);
    for (std::size_t t = 0; t < y.size(); ++t) y[t] = std::sin(2 * std::numbers::pi * double(t) / 7.0);
    const auto d = stl_decompose(y, 7);
    check_additive(y, d);
    CHECK(d.method == DecompositionMethod::Stl);
    CHECK(d.period == 7);
    CHECK(sumsq(d.remainder) / sumsq(y) < 0.02);
}

TEST_CASE("STL on a constant series puts everything in the trend") {
    const std::vector<double> y(60, 4.0);
    for (bool robust : {false, true}) {
        const auto d = stl_decompose(y, 12, robust);
        for (std::size_t i = 0; i < y.size(); ++i) {
            CHECK(std::abs(d.seasonal[i]) < 1e-10);
            CHECK(std::abs(d.remainder[i]) < 1e-10);
            CHECK(d.trend[i] == doctest::Approx(4.0));
        }
    }
}

TEST_CASE("STL additivity on random input") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto y = ar1(200, 0.6, seed);
        check_additive(y, stl_decompose(y, 7));
        check_additive(y, stl_decompose(y, 30, true));
        check_additive(y, periodic_means_decompose(y, 12));
    }
}

TEST_CASE("STL robust mode damps an outlier") {
    std::vector<double> y(140);
    for (std::size_t t = 0; t < y.size(); ++t) y[t] = std::sin(2 * std::numbers::pi * double(t) / 7.0);
    y[70] += 50.0;
    const auto plain = stl_decompose(y, 7, false);
    const auto robust = stl_decompose(y, 7, true);
    // The robust fit leaves the spike in the remainder instead of smearing it.
    CHECK(robust.remainder[70] > plain.remainder[70]);
}

TEST_CASE("STL input checks") {
    const std::vector<double> y(20, 1.0);
    try {
        (void)stl_decompose(y, 1);
        FAIL("period 1 accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BadPeriod);
    }
    try {
        (void)stl_decompose(y, 7);
        FAIL("fewer than 3 cycles accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::TooShort);
    }
}

TEST_CASE("periodic means seasonal sums to zero over each cycle") {
    std::vector<double> y(84);
    for (std::size_t t = 0; t < y.size(); ++t) y[t] = 3.0 * ((t % 12) == 0) + 0.1 * double(t);
    const auto d = periodic_means_decompose(y, 12);
    CHECK(d.method == DecompositionMethod::PeriodicMeans);
    for (std::size_t c = 0; c + 12 <= y.size(); c += 12) {
        double s = 0;
        for (std::size_t j = 0; j < 12; ++j) s += d.seasonal[c + j];
        CHECK(std::abs(s) < 1e-6 * 3.0);
    }
}

TEST_CASE("centered moving average") {
    std::vector<double> y(20);
    std::iota(y.begin(), y.end(), 0.0);
    const auto odd = centered_moving_average(y, 5);
    CHECK(std::isnan(odd[1]));
    CHECK(odd[2] == doctest::Approx(2.0));
    CHECK(odd[17] == doctest::Approx(17.0));
    CHECK(std::isnan(odd[18]));
    const auto even = centered_moving_average(y, 4);
    CHECK(std::isnan(even[1]));
    CHECK(even[2] == doctest::Approx(2.0));
    CHECK(even[17] == doctest::Approx(17.0));
    CHECK(std::isnan(even[18]));
}
