#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stk/execution.hpp"
#include "stk/mackinnon.hpp"
#include "stk/regression.hpp"
#include "stk/series.hpp"

namespace stk {

enum class UnitRootTest { Adf, Kpss, Pp, ZivotAndrews };

[[nodiscard]] std::string_view to_string(UnitRootTest test) noexcept;
/// "constant-only" / "constant+trend".
[[nodiscard]] std::string_view to_string(TrendSpec spec) noexcept;

/// Outcome of one unit-root / stationarity test under one deterministic spec.
///
/// `detected` is always oriented towards non-stationarity: for ADF, PP and
/// Zivot-Andrews it means the unit-root null was not rejected, for KPSS that
/// the stationarity null was rejected.
struct UnitRootResult {
    UnitRootTest test = UnitRootTest::Adf;
    TrendSpec spec = TrendSpec::ConstantOnly;
    double statistic = 0.0;
    std::optional<double> p_value;
    CriticalValues critical_values;
    std::size_t lags_used = 0;
    std::optional<std::size_t> break_index;  ///< Zivot-Andrews only
    bool detected = false;
    std::vector<std::string> notes;
};

/// Augmented Dickey-Fuller t-test on gamma with AIC-selected lag and
/// MacKinnon p-value. Needs n - p - 3 >= 10.
[[nodiscard]] UnitRootResult adf_test(std::span<const double> values, TrendSpec spec,
                                      double alpha = 0.05);

/// KPSS statistic n^-2 sum S_t^2 / s^2(l) with l = floor(12 (n/100)^(1/4)).
[[nodiscard]] UnitRootResult kpss_test(std::span<const double> values, TrendSpec spec,
                                       double alpha = 0.05);

/// KPSS critical values for the level (ConstantOnly) and trend cases.
[[nodiscard]] CriticalValues kpss_critical_values(TrendSpec spec) noexcept;

/// Pieces of the Phillips-Perron regression y_t = c [+ b t] + rho y_{t-1} + u_t.
struct PpComponents {
    double tau = 0.0;      ///< uncorrected t-ratio of (rho - 1)
    double rho_se = 0.0;   ///< standard error of rho
    double gamma0 = 0.0;   ///< (1/T) sum u_t^2
    double lambda2 = 0.0;  ///< Bartlett long-run variance of u
    double sigma = 0.0;    ///< sqrt(SSR / (T - k))
    std::size_t nobs = 0;  ///< T
    std::size_t lag = 0;   ///< Bartlett bandwidth
};

[[nodiscard]] PpComponents pp_components(std::span<const double> values, TrendSpec spec);

/// Z_tau = sqrt(gamma0/lambda2) tau - (lambda2 - gamma0) T se(rho) / (2 lambda sigma).
[[nodiscard]] double pp_z_tau(const PpComponents& c) noexcept;

/// floor(4 (n/100)^(2/9)).
[[nodiscard]] std::size_t pp_bandwidth(std::size_t n) noexcept;

[[nodiscard]] UnitRootResult pp_test(std::span<const double> values, TrendSpec spec,
                                     double alpha = 0.05);

/// Candidate break positions [floor(0.15 n), floor(0.85 n)).
struct BreakRange {
    std::size_t begin = 0;
    std::size_t end = 0;
    [[nodiscard]] std::size_t size() const noexcept { return end - begin; }
};

[[nodiscard]] BreakRange za_break_range(std::size_t n) noexcept;

/// t-ratio of gamma in the intercept-break regression for every candidate
/// break (NaN where the dummy is collinear with the other regressors).
/// The parallel and serial paths give bit-identical vectors.
[[nodiscard]] std::vector<double> za_break_search(std::span<const double> values, std::size_t lag,
                                                  Execution exec);

/// Zivot-Andrews model A (break in intercept, with trend). Lag fixed to the
/// full-series ADF(constant+trend) AIC choice. Needs n >= 50.
[[nodiscard]] UnitRootResult zivot_andrews_test(std::span<const double> values,
                                                double alpha = 0.05,
                                                Execution exec = Execution::Serial);

/// Zivot-Andrews model A critical values.
[[nodiscard]] CriticalValues za_critical_values() noexcept;

enum class TrendClass { Stationary, UnitRoot, DeterministicTrend, StructuralBreak, Inconclusive };

[[nodiscard]] std::string_view to_string(TrendClass kind) noexcept;

struct TrendDiagnosis {
    TrendClass kind = TrendClass::Inconclusive;
    std::string explanation;
    std::vector<std::string> notes;
};

/// Joint reading of the seven trend runs (ADF, KPSS, PP under both specs and
/// Zivot-Andrews). Throws `Error(WrongResultSet)` unless each of those appears
/// exactly once.
[[nodiscard]] TrendDiagnosis classify_trend(std::span<const UnitRootResult> results);

/// Same decision table on whatever subset of the seven runs succeeded; rows
/// whose inputs are missing cannot fire. Duplicates throw WrongResultSet.
[[nodiscard]] TrendDiagnosis classify_available(std::span<const UnitRootResult> results);

// TimeSeries conveniences.
inline UnitRootResult adf_test(const TimeSeries& ts, TrendSpec spec, double alpha = 0.05) {
    return adf_test(ts.values(), spec, alpha);
}
inline UnitRootResult kpss_test(const TimeSeries& ts, TrendSpec spec, double alpha = 0.05) {
    return kpss_test(ts.values(), spec, alpha);
}
inline UnitRootResult pp_test(const TimeSeries& ts, TrendSpec spec, double alpha = 0.05) {
    return pp_test(ts.values(), spec, alpha);
}
inline UnitRootResult zivot_andrews_test(const TimeSeries& ts, double alpha = 0.05,
                                         Execution exec = Execution::Serial) {
    return zivot_andrews_test(ts.values(), alpha, exec);
}

}  // namespace stk
