#include "stk/synth.hpp"

#include <cmath>
#include <fmt/format.h>
#include <numbers>

#include "stk/error.hpp"

namespace stk {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) noexcept {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

void bad_spec(const std::string& why) { throw Error(ErrorKind::BadSpec, why); }

bool in_open_unit(double x) { return x > 0.0 && x < 1.0; }

}  // namespace

Rng::Rng(std::uint64_t seed) noexcept {
    std::uint64_t x = seed;
    for (auto& word : s_) word = splitmix64(x);
}

std::uint64_t Rng::next_u64() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::normal() noexcept {
    if (spare_) {
        const double v = *spare_;
        spare_.reset();
        return v;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    return u * f;
}

void validate(const SynthSpec& spec) {
    if (spec.n < kMinSeriesLength) {
        bad_spec(fmt::format("n must be at least {}, got {}", kMinSeriesLength, spec.n));
    }
    if (spec.freq_kind == FrequencyKind::Unknown) bad_spec("frequency must be known");
    if (!(spec.noise_sigma >= 0.0) || !std::isfinite(spec.noise_sigma)) bad_spec("noise sigma must be >= 0");
    if (spec.seasonal_amplitude != 0.0 && spec.seasonal_period < 2) bad_spec("seasonal period must be >= 2");
    if (!(std::abs(spec.ar_coefficient) < 1.0)) bad_spec("AR coefficient must satisfy |phi| < 1");
    if (spec.unit_root && spec.arch) bad_spec("unit_root and arch are mutually exclusive");
    if (spec.arch) {
        if (!(spec.arch->omega > 0.0)) bad_spec("ARCH omega must be > 0");
        if (!(spec.arch->alpha1 >= 0.0 && spec.arch->alpha1 < 1.0)) bad_spec("ARCH alpha1 must be in [0, 1)");
    }
    if (spec.variance_break) {
        if (!in_open_unit(spec.variance_break->position)) bad_spec("variance break position must be in (0, 1)");
        if (!(spec.variance_break->multiplier > 0.0)) bad_spec("variance break multiplier must be > 0");
    }
    if (spec.level_break && !in_open_unit(spec.level_break->position)) {
        bad_spec("level break position must be in (0, 1)");
    }
    for (double v : {spec.baseline, spec.trend_slope, spec.seasonal_amplitude}) {
        if (!std::isfinite(v)) bad_spec("parameters must be finite");
    }
}

std::vector<Instant> make_timestamps(Instant start, FrequencyKind kind, std::size_t n) {
    using namespace std::chrono;
    std::vector<Instant> out;
    out.reserve(n);
    const auto day = floor<days>(start);
    const auto time_of_day = start - day;
    const year_month_day ymd{day};

    auto add_months = [&](long months) {
        const year_month ym = year_month{ymd.year(), ymd.month()} + std::chrono::months{months};
        const auto last = year_month_day_last{ym.year(), month_day_last{ym.month()}}.day();
        const auto d = std::min(ymd.day(), last);
        return Instant{sys_days{ym / d}} + time_of_day;
    };

    for (std::size_t t = 0; t < n; ++t) {
        const auto i = static_cast<long>(t);
        switch (kind) {
            case FrequencyKind::Hourly: out.push_back(start + hours{i}); break;
            case FrequencyKind::Daily: out.push_back(start + days{i}); break;
            case FrequencyKind::Weekly: out.push_back(start + weeks{i}); break;
            case FrequencyKind::Monthly: out.push_back(add_months(i)); break;
            case FrequencyKind::Quarterly: out.push_back(add_months(3 * i)); break;
            case FrequencyKind::Yearly: out.push_back(add_months(12 * i)); break;
            case FrequencyKind::Unknown: throw Error(ErrorKind::BadSpec, "frequency must be known");
        }
    }
    return out;
}

std::vector<double> generate_values(const SynthSpec& spec) {
    validate(spec);
    const std::size_t n = spec.n;
    const auto nd = static_cast<double>(n);
    const auto var_break = spec.variance_break
        ? static_cast<std::size_t>(std::floor(spec.variance_break->position * nd)) : n;
    const auto level_break = spec.level_break
        ? static_cast<std::size_t>(std::floor(spec.level_break->position * nd)) : n;

    Rng rng(spec.seed);
    std::vector<double> y(n);
    double e = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const double scale = t >= var_break ? spec.variance_break->multiplier : 1.0;
        const double z = rng.normal();
        if (spec.arch) {
            e = z * std::sqrt(spec.arch->omega + spec.arch->alpha1 * e * e) * scale;
        } else if (spec.unit_root) {
            e += spec.noise_sigma * scale * z;
        } else {
            e = spec.ar_coefficient * e + spec.noise_sigma * scale * z;
        }
        const auto td = static_cast<double>(t);
        double v = spec.baseline + spec.trend_slope * td + e;
        if (spec.seasonal_amplitude != 0.0) {
            v += spec.seasonal_amplitude *
                 std::sin(2.0 * std::numbers::pi * td / static_cast<double>(spec.seasonal_period));
        }
        if (t >= level_break) v += spec.level_break->shift;
        y[t] = v;
    }
    return y;
}

TimeSeries generate(const SynthSpec& spec) {
    std::vector<double> values = generate_values(spec);
    return TimeSeries::from_records(make_timestamps(spec.start, spec.freq_kind, spec.n), std::move(values));
}

}  // namespace stk
