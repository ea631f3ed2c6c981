#include "stk/trend.hpp"

#include <array>
#include <cmath>
#include <fmt/format.h>
#include <limits>

#include "numeric.hpp"
#include "stk/error.hpp"
#include "stk/notes.hpp"

namespace stk {

namespace {

// Kwiatkowski, Phillips, Schmidt & Shin (1992), Table 1 (asymptotic).
constexpr CriticalValues kKpssLevel{0.739, 0.463, 0.347};
constexpr CriticalValues kKpssTrend{0.216, 0.146, 0.119};

// Zivot & Andrews (1992), Table 2A (model A, break in intercept).
constexpr CriticalValues kZivotAndrewsA{-5.34, -4.80, -4.58};

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string spec_label(TrendSpec spec) { return std::string(to_string(spec)); }

}  // namespace

std::string_view to_string(UnitRootTest test) noexcept {
    switch (test) {
        case UnitRootTest::Adf: return "adf";
        case UnitRootTest::Kpss: return "kpss";
        case UnitRootTest::Pp: return "pp";
        case UnitRootTest::ZivotAndrews: return "zivot_andrews";
    }
    return "unknown";
}

std::string_view to_string(TrendSpec spec) noexcept {
    return spec == TrendSpec::ConstantOnly ? "constant-only" : "constant+trend";
}

std::string_view to_string(TrendClass kind) noexcept {
    switch (kind) {
        case TrendClass::Stationary: return "stationary";
        case TrendClass::UnitRoot: return "unit root";
        case TrendClass::DeterministicTrend: return "deterministic trend";
        case TrendClass::StructuralBreak: return "structural break";
        case TrendClass::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

// ---------------------------------------------------------------------------
// ADF

UnitRootResult adf_test(std::span<const double> values, TrendSpec spec, double alpha) {
    const std::size_t n = values.size();
    const std::size_t lag = select_adf_lag(values, spec);
    if (n < lag + 13) {
        throw Error(ErrorKind::TooShort,
                    fmt::format("ADF with {} lags needs at least {} points, got {}", lag, lag + 13, n));
    }
    const AdfDesign d = build_adf_design(values, lag, spec, lag);
    const LinearFit fit = ols_fit(d.X, d.y);

    UnitRootResult r;
    r.test = UnitRootTest::Adf;
    r.spec = spec;
    r.statistic = fit.t_ratio(0);
    r.p_value = mackinnon_pvalue(r.statistic, spec);
    r.critical_values = mackinnon_critical_values(spec, fit.nobs);
    r.lags_used = lag;
    r.detected = *r.p_value >= alpha;
    if (r.detected) r.notes.emplace_back(notes::kUnitRoot);
    return r;
}

// ---------------------------------------------------------------------------
// KPSS

CriticalValues kpss_critical_values(TrendSpec spec) noexcept {
    return spec == TrendSpec::ConstantOnly ? kKpssLevel : kKpssTrend;
}

UnitRootResult kpss_test(std::span<const double> values, TrendSpec spec, double alpha) {
    const std::size_t n = values.size();
    const std::size_t lag = schwert_maxlag(n);

    Eigen::VectorXd resid(static_cast<Eigen::Index>(n));
    if (spec == TrendSpec::ConstantOnly) {
        const double m = detail::mean(values);
        for (std::size_t t = 0; t < n; ++t) resid(static_cast<Eigen::Index>(t)) = values[t] - m;
    } else {
        Eigen::MatrixXd X(static_cast<Eigen::Index>(n), 2);
        Eigen::VectorXd y(static_cast<Eigen::Index>(n));
        for (std::size_t t = 0; t < n; ++t) {
            const auto i = static_cast<Eigen::Index>(t);
            X(i, 0) = 1.0;
            X(i, 1) = static_cast<double>(t + 1);
            y(i) = values[t];
        }
        resid = ols_fit(X, y).residuals;
    }

    const CriticalValues cv = kpss_critical_values(spec);
    UnitRootResult r;
    r.test = UnitRootTest::Kpss;
    r.spec = spec;
    r.critical_values = cv;
    r.lags_used = lag;

    if (detail::negligible(resid.norm(), values)) {
        r.statistic = 0.0;
        r.notes.emplace_back(notes::kKpssPerfectFit);
    } else {
        double partial = 0.0;
        double sum_sq = 0.0;
        for (Eigen::Index t = 0; t < resid.size(); ++t) {
            partial += resid(t);
            sum_sq += partial * partial;
        }
        const double lrv =
            newey_west_lrv(std::span<const double>(resid.data(), static_cast<std::size_t>(resid.size())), lag);
        const double nd = static_cast<double>(n);
        r.statistic = sum_sq / (nd * nd * lrv);
    }

    // p-value interpolated over the tabulated points and clamped to their range.
    double p;
    if (r.statistic <= cv.ten) {
        p = 0.10;
    } else if (r.statistic <= cv.five) {
        p = 0.10 - 0.05 * (r.statistic - cv.ten) / (cv.five - cv.ten);
    } else if (r.statistic <= cv.one) {
        p = 0.05 - 0.04 * (r.statistic - cv.five) / (cv.one - cv.five);
    } else {
        p = 0.01;
    }
    r.p_value = p;
    r.notes.emplace_back(notes::kKpssInterpolated);

    r.detected = r.statistic > cv.at(alpha);
    if (r.detected) {
        r.notes.emplace_back(spec == TrendSpec::ConstantOnly ? notes::kKpssLevelRejected
                                                             : notes::kKpssTrendRejected);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Phillips-Perron

std::size_t pp_bandwidth(std::size_t n) noexcept {
    return static_cast<std::size_t>(
        std::floor(4.0 * std::pow(static_cast<double>(n) / 100.0, 2.0 / 9.0)));
}

PpComponents pp_components(std::span<const double> values, TrendSpec spec) {
    const std::size_t n = values.size();
    if (n < 25) {
        throw Error(ErrorKind::TooShort, fmt::format("Phillips-Perron needs n >= 25, got {}", n));
    }
    const auto rows = static_cast<Eigen::Index>(n - 1);
    const Eigen::Index det = deterministic_terms(spec);
    Eigen::MatrixXd X(rows, 1 + det);
    Eigen::VectorXd y(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto t = static_cast<std::size_t>(r) + 1;
        y(r) = values[t];
        X(r, 0) = values[t - 1];
        X(r, 1) = 1.0;
        if (spec == TrendSpec::ConstantTrend) X(r, 2) = static_cast<double>(t);
    }
    const LinearFit fit = ols_fit(X, y);

    PpComponents c;
    c.nobs = fit.nobs;
    c.lag = pp_bandwidth(n);
    c.rho_se = fit.standard_errors(0);
    c.tau = (fit.coefficients(0) - 1.0) / c.rho_se;
    c.gamma0 = fit.ssr / static_cast<double>(fit.nobs);
    c.lambda2 = newey_west_lrv(
        std::span<const double>(fit.residuals.data(), static_cast<std::size_t>(fit.residuals.size())),
        c.lag);
    c.sigma = std::sqrt(fit.sigma2);
    if (!(c.lambda2 > 0.0)) {
        throw Error(ErrorKind::DegenerateVariance, "long-run variance of PP residuals is zero");
    }
    return c;
}

double pp_z_tau(const PpComponents& c) noexcept {
    const double lambda = std::sqrt(c.lambda2);
    return std::sqrt(c.gamma0 / c.lambda2) * c.tau -
           (c.lambda2 - c.gamma0) * static_cast<double>(c.nobs) * c.rho_se / (2.0 * lambda * c.sigma);
}

UnitRootResult pp_test(std::span<const double> values, TrendSpec spec, double alpha) {
    const PpComponents c = pp_components(values, spec);
    UnitRootResult r;
    r.test = UnitRootTest::Pp;
    r.spec = spec;
    r.statistic = pp_z_tau(c);
    r.p_value = mackinnon_pvalue(r.statistic, spec);
    r.critical_values = mackinnon_critical_values(spec, c.nobs);
    r.lags_used = c.lag;
    r.detected = *r.p_value >= alpha;
    if (r.detected) r.notes.emplace_back(notes::kUnitRoot);
    return r;
}

// ---------------------------------------------------------------------------
// Zivot-Andrews

CriticalValues za_critical_values() noexcept { return kZivotAndrewsA; }

BreakRange za_break_range(std::size_t n) noexcept { return {15 * n / 100, 85 * n / 100}; }

namespace {

double za_candidate_t_ratio(const AdfDesign& base, std::size_t lag, std::size_t break_at) {
    const Eigen::Index rows = base.X.rows();
    const Eigen::Index k = base.X.cols();
    Eigen::MatrixXd X(rows, k + 1);
    X.leftCols(k) = base.X;
    std::size_t ones = 0;
    for (Eigen::Index r = 0; r < rows; ++r) {
        // Row r explains observation y_{lag + r + 1}.
        const bool after = lag + static_cast<std::size_t>(r) + 1 >= break_at;
        X(r, k) = after ? 1.0 : 0.0;
        ones += after ? 1 : 0;
    }
    if (ones == 0 || ones == static_cast<std::size_t>(rows)) return kNaN;
    try {
        return ols_fit(X, base.y).t_ratio(0);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::RankDeficient) return kNaN;
        throw;
    }
}

}  // namespace

std::vector<double> za_break_search(std::span<const double> values, std::size_t lag,
                                    Execution exec) {
    const BreakRange range = za_break_range(values.size());
    const AdfDesign base = build_adf_design(values, lag, TrendSpec::ConstantTrend, lag);
    std::vector<double> t_ratios(range.size(), kNaN);
    const auto count = static_cast<std::ptrdiff_t>(range.size());

    if (exec == Execution::Serial) {
        for (std::ptrdiff_t i = 0; i < count; ++i) {
            t_ratios[static_cast<std::size_t>(i)] =
                za_candidate_t_ratio(base, lag, range.begin + static_cast<std::size_t>(i));
        }
        return t_ratios;
    }

    // Exceptions must not cross the OpenMP region boundary.
    bool failed = false;
    std::string failure;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            t_ratios[static_cast<std::size_t>(i)] =
                za_candidate_t_ratio(base, lag, range.begin + static_cast<std::size_t>(i));
        } catch (const std::exception& e) {
#pragma omp critical(stk_za_failure)
            {
                failed = true;
                failure = e.what();
            }
        }
    }
    if (failed) throw Error(ErrorKind::DimensionMismatch, failure);
    return t_ratios;
}

UnitRootResult zivot_andrews_test(std::span<const double> values, double alpha, Execution exec) {
    const std::size_t n = values.size();
    if (n < 50) {
        throw Error(ErrorKind::TooShort, fmt::format("Zivot-Andrews needs n >= 50, got {}", n));
    }
    const std::size_t lag = select_adf_lag(values, TrendSpec::ConstantTrend);
    const std::vector<double> t_ratios = za_break_search(values, lag, exec);
    const BreakRange range = za_break_range(n);

    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < t_ratios.size(); ++i) {
        if (std::isnan(t_ratios[i])) continue;
        if (!best || t_ratios[i] < t_ratios[*best]) best = i;
    }
    if (!best) {
        throw Error(ErrorKind::RankDeficient, "no candidate break gives a full-rank regression");
    }

    UnitRootResult r;
    r.test = UnitRootTest::ZivotAndrews;
    r.spec = TrendSpec::ConstantTrend;
    r.statistic = t_ratios[*best];
    r.critical_values = kZivotAndrewsA;
    r.lags_used = lag;
    r.break_index = range.begin + *best;
    r.detected = r.statistic > kZivotAndrewsA.at(alpha);
    if (r.detected) {
        r.notes.emplace_back(notes::kZivotAndrewsUnitRoot);
    } else {
        r.notes.push_back(notes::za_break(*r.break_index));
    }
    r.notes.emplace_back(notes::kZivotAndrewsCaveat);
    return r;
}

// ---------------------------------------------------------------------------
// Classification

namespace {

struct Votes {
    const UnitRootResult* adf_c = nullptr;
    const UnitRootResult* adf_ct = nullptr;
    const UnitRootResult* kpss_c = nullptr;
    const UnitRootResult* kpss_ct = nullptr;
    const UnitRootResult* pp_c = nullptr;
    const UnitRootResult* pp_ct = nullptr;
    const UnitRootResult* za = nullptr;
};

const UnitRootResult** slot(Votes& v, const UnitRootResult& r) {
    const bool c = r.spec == TrendSpec::ConstantOnly;
    switch (r.test) {
        case UnitRootTest::Adf: return c ? &v.adf_c : &v.adf_ct;
        case UnitRootTest::Kpss: return c ? &v.kpss_c : &v.kpss_ct;
        case UnitRootTest::Pp: return c ? &v.pp_c : &v.pp_ct;
        case UnitRootTest::ZivotAndrews: return &v.za;
    }
    return nullptr;
}

Votes collect(std::span<const UnitRootResult> results) {
    Votes v;
    for (const auto& r : results) {
        const UnitRootResult** s = slot(v, r);
        if (*s != nullptr) {
            throw Error(ErrorKind::WrongResultSet,
                        fmt::format("duplicate {} ({}) result", to_string(r.test), to_string(r.spec)));
        }
        *s = &r;
    }
    return v;
}

std::string reading(const UnitRootResult* r, bool rejects_when_detected) {
    if (r == nullptr) return "skipped";
    const bool rejects = rejects_when_detected ? r->detected : !r->detected;
    return rejects ? "rejects" : "does not reject";
}

}  // namespace

TrendDiagnosis classify_available(std::span<const UnitRootResult> results) {
    const Votes v = collect(results);
    // "Rejects" refers to the test's own null.
    auto adf_rejects = [](const UnitRootResult* r) { return r != nullptr && !r->detected; };
    auto adf_keeps = [](const UnitRootResult* r) { return r != nullptr && r->detected; };
    auto kpss_rejects = [](const UnitRootResult* r) { return r != nullptr && r->detected; };
    auto kpss_keeps = [](const UnitRootResult* r) { return r != nullptr && !r->detected; };

    TrendDiagnosis d;
    if (adf_rejects(v.adf_c) && kpss_keeps(v.kpss_c)) {
        d.kind = TrendClass::Stationary;
        d.explanation =
            "ADF rejects a unit root and KPSS does not reject level stationarity "
            "(constant-only specification).";
    } else if (adf_keeps(v.adf_c) && adf_rejects(v.adf_ct) && kpss_keeps(v.kpss_ct)) {
        d.kind = TrendClass::DeterministicTrend;
        d.explanation =
            "ADF rejects a unit root only once a linear trend is allowed, and KPSS does not "
            "reject trend stationarity.";
        d.notes.emplace_back(notes::kDeterministicTrend);
    } else if (adf_keeps(v.adf_c) && adf_keeps(v.adf_ct) && kpss_rejects(v.kpss_c) &&
               kpss_rejects(v.kpss_ct)) {
        if (v.za != nullptr && !v.za->detected && v.za->break_index) {
            d.kind = TrendClass::StructuralBreak;
            d.explanation = fmt::format(
                "ADF and KPSS point to a unit root, but Zivot-Andrews rejects it once a level "
                "break near index {} is allowed.",
                *v.za->break_index);
            d.notes.push_back(notes::za_break(*v.za->break_index));
        } else {
            d.kind = TrendClass::UnitRoot;
            d.explanation =
                "ADF does not reject a unit root under either specification and KPSS rejects "
                "stationarity under both.";
            d.notes.emplace_back(notes::kUnitRoot);
        }
    } else {
        d.kind = TrendClass::Inconclusive;
        d.explanation = fmt::format(
            "ADF/KPSS readings match no clean pattern (ADF constant-only {}, constant+trend {}; "
            "KPSS constant-only {}, constant+trend {}); see per-test notes.",
            reading(v.adf_c, false), reading(v.adf_ct, false), reading(v.kpss_c, true),
            reading(v.kpss_ct, true));
    }

    const std::array<std::pair<const UnitRootResult*, const UnitRootResult*>, 2> pairs{
        {{v.adf_c, v.pp_c}, {v.adf_ct, v.pp_ct}}};
    for (const auto& [adf, pp] : pairs) {
        if (adf != nullptr && pp != nullptr && adf->detected != pp->detected) {
            d.notes.push_back(notes::adf_pp_disagree(spec_label(adf->spec)));
        }
    }
    return d;
}

TrendDiagnosis classify_trend(std::span<const UnitRootResult> results) {
    const Votes v = collect(results);
    if (results.size() != 7 || !v.adf_c || !v.adf_ct || !v.kpss_c || !v.kpss_ct || !v.pp_c ||
        !v.pp_ct || !v.za) {
        throw Error(ErrorKind::WrongResultSet,
                    "classification needs ADF, KPSS and PP under both specs plus Zivot-Andrews");
    }
    return classify_available(results);
}

}  // namespace stk
