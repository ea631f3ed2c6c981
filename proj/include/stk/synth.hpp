#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "stk/series.hpp"

namespace stk {

/// Portable seeded generator: xoshiro256** (Blackman & Vigna) with its state
/// expanded from the seed by splitmix64. Uniforms use the top 53 bits;
/// normals use the Marsaglia polar method, caching the second variate.
/// The stream for a given seed is the same on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) noexcept;

    std::uint64_t next_u64() noexcept;
    /// Uniform on [0, 1).
    double uniform() noexcept;
    double normal() noexcept;
    double normal(double mean, double sd) noexcept { return mean + sd * normal(); }

private:
    std::array<std::uint64_t, 4> s_{};
    std::optional<double> spare_;
};

struct VarianceBreak {
    double position = 0.5;    ///< fraction of n in (0, 1)
    double multiplier = 2.0;  ///< noise sd multiplier after the break
};

struct LevelBreak {
    double position = 0.5;  ///< fraction of n in (0, 1)
    double shift = 0.0;
};

struct ArchSpec {
    double omega = 0.2;
    double alpha1 = 0.7;  ///< in [0, 1)
};

/// Recipe for a synthetic series
///   y_t = baseline + trend_slope t + seasonal_amplitude sin(2 pi t / period) + e_t
/// (+ level shift after the level break). The noise e_t is, in order of
/// precedence:
///   - unit_root: random walk of N(0, noise_sigma^2) steps;
///   - arch:      e_t = z_t sqrt(omega + alpha1 e_{t-1}^2);
///   - otherwise  AR(1) e_t = ar_coefficient e_{t-1} + N(0, noise_sigma^2)
///                (iid when ar_coefficient == 0).
/// A variance break multiplies the innovation sd from its position on.
struct SynthSpec {
    std::size_t n = 500;
    FrequencyKind freq_kind = FrequencyKind::Daily;
    Instant start = Instant{std::chrono::sys_days{std::chrono::year{2020} / 1 / 1}};
    double baseline = 0.0;
    double trend_slope = 0.0;
    double seasonal_amplitude = 0.0;
    int seasonal_period = 7;
    double noise_sigma = 1.0;
    double ar_coefficient = 0.0;  ///< |phi| < 1
    bool unit_root = false;
    std::optional<VarianceBreak> variance_break;
    std::optional<LevelBreak> level_break;
    std::optional<ArchSpec> arch;
    std::uint64_t seed = 42;
};

/// Throws `Error(BadSpec)` on an invalid recipe.
void validate(const SynthSpec& spec);

/// Timestamps for n observations of the given frequency starting at `start`;
/// monthly, quarterly and yearly steps follow the calendar (day clamped to the
/// month's length).
[[nodiscard]] std::vector<Instant> make_timestamps(Instant start, FrequencyKind kind, std::size_t n);

[[nodiscard]] TimeSeries generate(const SynthSpec& spec);

/// Only the values of `generate(spec)`.
[[nodiscard]] std::vector<double> generate_values(const SynthSpec& spec);

}  // namespace stk
