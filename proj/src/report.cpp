#include "stk/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <sstream>

#include "stk/csv.hpp"
#include "stk/error.hpp"
#include "stk/notes.hpp"
#include "stk/variance.hpp"

namespace stk {

namespace {

constexpr std::string_view kZaSpecLabel = "intercept-break";

std::string_view null_hypothesis(UnitRootTest test, TrendSpec spec) {
    switch (test) {
        case UnitRootTest::Adf:
        case UnitRootTest::Pp: return "unit root";
        case UnitRootTest::Kpss:
            return spec == TrendSpec::ConstantOnly ? "level stationarity" : "trend stationarity";
        case UnitRootTest::ZivotAndrews: return "unit root without a structural break";
    }
    return "";
}

std::string_view null_hypothesis(VarianceTest test) {
    switch (test) {
        case VarianceTest::Levene:
        case VarianceTest::Bartlett: return "equal variance across segments";
        case VarianceTest::ArchLm: return "no ARCH effects";
        case VarianceTest::VarianceRatio: return "equal variance in the first and last thirds";
    }
    return "";
}

std::string_view null_hypothesis(SeasonalityTest test) {
    return test == SeasonalityTest::SeasonalStrength
               ? "no seasonality (strength at or below threshold)"
               : "same distribution in every seasonal phase";
}

Verdict verdict_of(bool detected) {
    return detected ? Verdict::NonStationarityDetected : Verdict::StationaryCompatible;
}

template <class Fn>
auto guarded(Fn&& fn, std::string_view test_id, std::string_view context)
    -> Outcome<std::invoke_result_t<Fn>> {
    try {
        return fn();
    } catch (const Error& e) {
        return Skipped{std::string(test_id), std::string(context), e.kind(), e.what()};
    } catch (const std::exception& e) {
        return Skipped{std::string(test_id), std::string(context), ErrorKind::NumericalFailure, e.what()};
    }
}

TestResult skipped_row(const Skipped& s, Category category, std::string_view null_hyp, double alpha) {
    TestResult row;
    row.test_id = s.test_id;
    row.category = category;
    if (!s.context.empty()) row.spec_or_period = s.context;
    row.null_hypothesis = std::string(null_hyp);
    row.alpha = alpha;
    row.verdict = Verdict::Skipped;
    row.notes.push_back(notes::skipped(s.reason));
    return row;
}

TestResult trend_row(const Outcome<UnitRootResult>& outcome, UnitRootTest test, TrendSpec spec,
                     double alpha) {
    const auto null_hyp = null_hypothesis(test, spec);
    if (const auto* s = std::get_if<Skipped>(&outcome)) {
        return skipped_row(*s, Category::Trend, null_hyp, alpha);
    }
    const auto& r = std::get<UnitRootResult>(outcome);
    TestResult row;
    row.test_id = std::string(to_string(r.test));
    row.category = Category::Trend;
    row.spec_or_period = std::string(test == UnitRootTest::ZivotAndrews ? kZaSpecLabel : to_string(r.spec));
    row.null_hypothesis = std::string(null_hyp);
    row.statistic = r.statistic;
    row.p_value = r.p_value;
    row.critical_values = r.critical_values;
    row.lags = r.lags_used;
    row.break_index = r.break_index;
    row.alpha = alpha;
    row.verdict = verdict_of(r.detected);
    row.notes = r.notes;
    return row;
}

std::string variance_context(const VarianceResult& r) {
    switch (r.test) {
        case VarianceTest::Levene:
        case VarianceTest::Bartlett: return fmt::format("{} segments", r.segments.value_or(0));
        case VarianceTest::ArchLm: return fmt::format("{} lags", r.lags.value_or(0));
        case VarianceTest::VarianceRatio: return "first vs last third";
    }
    return "";
}

TestResult variance_row(const Outcome<VarianceResult>& outcome, VarianceTest test, double alpha) {
    const auto null_hyp = null_hypothesis(test);
    if (const auto* s = std::get_if<Skipped>(&outcome)) {
        return skipped_row(*s, Category::Variance, null_hyp, alpha);
    }
    const auto& r = std::get<VarianceResult>(outcome);
    TestResult row;
    row.test_id = std::string(to_string(r.test));
    row.category = Category::Variance;
    row.spec_or_period = variance_context(r);
    row.null_hypothesis = std::string(null_hyp);
    row.statistic = r.statistic;
    row.p_value = r.p_value;
    row.lags = r.lags;
    row.alpha = alpha;
    row.verdict = verdict_of(r.detected);
    row.notes = r.notes;
    return row;
}

TestResult seasonality_row(const Outcome<SeasonalityResult>& outcome, SeasonalityTest test,
                           const SeasonalPeriod& period, double alpha) {
    const auto null_hyp = null_hypothesis(test);
    if (const auto* s = std::get_if<Skipped>(&outcome)) {
        TestResult row = skipped_row(*s, Category::Seasonality, null_hyp, alpha);
        row.period = period.period;
        return row;
    }
    const auto& r = std::get<SeasonalityResult>(outcome);
    TestResult row;
    row.test_id = std::string(to_string(r.test));
    row.category = Category::Seasonality;
    row.spec_or_period = r.label;
    row.null_hypothesis = std::string(null_hyp);
    row.statistic = r.statistic;
    row.p_value = r.p_value;
    row.threshold = r.threshold;
    row.period = r.period;
    row.alpha = alpha;
    row.verdict = verdict_of(r.detected);
    row.notes = r.notes;
    return row;
}

std::string plural(std::size_t n, std::string_view word) {
    return fmt::format("{} {}{}", n, word, n == 1 ? "" : "s");
}

}  // namespace

std::string_view to_string(Category c) noexcept {
    switch (c) {
        case Category::Trend: return "trend";
        case Category::Variance: return "variance";
        case Category::Seasonality: return "seasonality";
    }
    return "";
}

std::string_view to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::StationaryCompatible: return "stationary_compatible";
        case Verdict::NonStationarityDetected: return "non_stationarity_detected";
        case Verdict::Skipped: return "skipped";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "";
}

std::optional<Category> parse_category(std::string_view s) noexcept {
    for (auto c : {Category::Trend, Category::Variance, Category::Seasonality}) {
        if (to_string(c) == s) return c;
    }
    return std::nullopt;
}

std::optional<Verdict> parse_verdict(std::string_view s) noexcept {
    for (auto v : {Verdict::StationaryCompatible, Verdict::NonStationarityDetected, Verdict::Skipped,
                   Verdict::Inconclusive}) {
        if (to_string(v) == s) return v;
    }
    return std::nullopt;
}

void validate(const DetectConfig& config) {
    if (!(config.alpha > 0.0 && config.alpha <= 0.5)) {
        throw Error(ErrorKind::BadSpec, fmt::format("alpha must be in (0, 0.5], got {}", config.alpha));
    }
    if (config.variance_segments < 2 || config.variance_segments > 6) {
        throw Error(ErrorKind::BadSpec,
                    fmt::format("variance segments must be in [2, 6], got {}", config.variance_segments));
    }
    if (config.arch_lags && *config.arch_lags < 1) {
        throw Error(ErrorKind::BadSpec, "ARCH lags must be >= 1");
    }
    if (!(config.seasonal_strength_threshold >= 0.0 && config.seasonal_strength_threshold <= 1.0)) {
        throw Error(ErrorKind::BadSpec, "seasonal strength threshold must be in [0, 1]");
    }
}

DiagnosticsReport detect_all(const TimeSeries& ts, const DetectConfig& config, Execution exec) {
    validate(config);
    const auto values = ts.values();
    const double alpha = config.alpha;

    DiagnosticsReport report;
    report.n = ts.size();
    report.start = ts.timestamps().front();
    report.end = ts.timestamps().back();
    report.frequency = infer_frequency(ts);
    report.alpha = alpha;

    struct TrendJob {
        UnitRootTest test;
        TrendSpec spec;
    };
    constexpr std::array<TrendJob, 7> trend_jobs{{
        {UnitRootTest::Adf, TrendSpec::ConstantOnly},
        {UnitRootTest::Adf, TrendSpec::ConstantTrend},
        {UnitRootTest::Kpss, TrendSpec::ConstantOnly},
        {UnitRootTest::Kpss, TrendSpec::ConstantTrend},
        {UnitRootTest::Pp, TrendSpec::ConstantOnly},
        {UnitRootTest::Pp, TrendSpec::ConstantTrend},
        {UnitRootTest::ZivotAndrews, TrendSpec::ConstantTrend},
    }};
    constexpr std::array<VarianceTest, 4> variance_jobs{
        VarianceTest::Levene, VarianceTest::Bartlett, VarianceTest::ArchLm, VarianceTest::VarianceRatio};

    const std::vector<SeasonalPeriod> periods = candidate_periods(report.frequency, ts.size());
    const SeasonalityOptions season_opts{alpha, config.seasonal_strength_threshold, config.stl_robust};

    std::vector<Outcome<UnitRootResult>> trend_out(trend_jobs.size(), Skipped{});
    std::vector<Outcome<VarianceResult>> variance_out(variance_jobs.size(), Skipped{});
    std::vector<Outcome<SeasonalityResult>> season_out(2 * periods.size(), Skipped{});

    std::vector<std::function<void()>> jobs;
    for (std::size_t i = 0; i < trend_jobs.size(); ++i) {
        jobs.emplace_back([&, i] {
            const auto [test, spec] = trend_jobs[i];
            const std::string context(test == UnitRootTest::ZivotAndrews ? kZaSpecLabel : to_string(spec));
            trend_out[i] = guarded(
                [&]() -> UnitRootResult {
                    switch (test) {
                        case UnitRootTest::Adf: return adf_test(values, spec, alpha);
                        case UnitRootTest::Kpss: return kpss_test(values, spec, alpha);
                        case UnitRootTest::Pp: return pp_test(values, spec, alpha);
                        case UnitRootTest::ZivotAndrews: return zivot_andrews_test(values, alpha, exec);
                    }
                    throw Error(ErrorKind::WrongResultSet, "unknown trend test");
                },
                to_string(test), context);
        });
    }
    for (std::size_t i = 0; i < variance_jobs.size(); ++i) {
        jobs.emplace_back([&, i] {
            const VarianceTest test = variance_jobs[i];
            variance_out[i] = guarded(
                [&]() -> VarianceResult {
                    switch (test) {
                        case VarianceTest::Levene:
                            return levene_test(split_segments(values, config.variance_segments), alpha);
                        case VarianceTest::Bartlett:
                            return bartlett_test(split_segments(values, config.variance_segments), alpha);
                        case VarianceTest::ArchLm: return arch_lm_test(values, config.arch_lags, alpha);
                        case VarianceTest::VarianceRatio: return variance_ratio_test(values, alpha);
                    }
                    throw Error(ErrorKind::WrongResultSet, "unknown variance test");
                },
                to_string(test), "");
        });
    }
    for (std::size_t p = 0; p < periods.size(); ++p) {
        for (std::size_t t = 0; t < 2; ++t) {
            jobs.emplace_back([&, p, t] {
                const auto test = t == 0 ? SeasonalityTest::SeasonalStrength : SeasonalityTest::KruskalWallis;
                season_out[2 * p + t] = run_seasonality_test(values, periods[p], test, season_opts);
            });
        }
    }

    const auto job_count = static_cast<std::ptrdiff_t>(jobs.size());
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (std::ptrdiff_t j = 0; j < job_count; ++j) jobs[static_cast<std::size_t>(j)]();
    } else {
        for (std::ptrdiff_t j = 0; j < job_count; ++j) jobs[static_cast<std::size_t>(j)]();
    }

    // Trend diagnosis from whichever runs succeeded.
    std::vector<UnitRootResult> available;
    for (const auto& o : trend_out) {
        if (const auto* r = std::get_if<UnitRootResult>(&o)) available.push_back(*r);
    }
    report.trend_diagnosis = classify_available(available);
    if (available.size() < trend_jobs.size()) {
        report.trend_diagnosis.notes.push_back(fmt::format(
            "{} of 7 trend runs skipped; diagnosis uses the remaining runs",
            trend_jobs.size() - available.size()));
    }

    for (std::size_t i = 0; i < trend_jobs.size(); ++i) {
        report.results.push_back(trend_row(trend_out[i], trend_jobs[i].test, trend_jobs[i].spec, alpha));
    }
    // PP rows carry the ADF disagreement note for their specification.
    for (std::size_t spec = 0; spec < 2; ++spec) {
        const auto* adf = std::get_if<UnitRootResult>(&trend_out[spec]);
        const auto* pp = std::get_if<UnitRootResult>(&trend_out[4 + spec]);
        if (adf && pp && adf->detected != pp->detected) {
            report.results[4 + spec].notes.push_back(notes::adf_pp_disagree(to_string(adf->spec)));
        }
    }
    for (std::size_t i = 0; i < variance_jobs.size(); ++i) {
        report.results.push_back(variance_row(variance_out[i], variance_jobs[i], alpha));
    }
    for (std::size_t p = 0; p < periods.size(); ++p) {
        report.results.push_back(
            seasonality_row(season_out[2 * p], SeasonalityTest::SeasonalStrength, periods[p], alpha));
        report.results.push_back(
            seasonality_row(season_out[2 * p + 1], SeasonalityTest::KruskalWallis, periods[p], alpha));
    }

    if (periods.empty()) {
        report.notes.emplace_back(report.frequency.kind == FrequencyKind::Unknown ? notes::kFrequencyUnknown
                                                                                  : notes::kNoViablePeriod);
    }

    for (const auto& row : report.results) {
        auto& s = report.category_summary[static_cast<std::size_t>(row.category)];
        ++s.rows;
        if (row.verdict == Verdict::Skipped) {
            ++s.skipped;
        } else {
            ++s.tests_run;
            if (row.verdict == Verdict::NonStationarityDetected) ++s.detections;
        }
    }

    std::vector<std::string_view> flagged;
    for (auto c : {Category::Trend, Category::Variance, Category::Seasonality}) {
        if (report.summary(c).detections > 0) flagged.push_back(to_string(c));
    }
    report.overall_note =
        flagged.empty()
            ? "No category shows non-stationarity at the chosen significance level."
            : fmt::format("Non-stationarity indicated in: {}. Review the per-test notes before transforming.",
                          fmt::join(flagged, ", "));
    return report;
}

std::string summarize(const DiagnosticsReport& report) {
    std::size_t run = 0;
    std::size_t detections = 0;
    std::size_t skipped = 0;
    for (const auto& s : report.category_summary) {
        run += s.tests_run;
        detections += s.detections;
        skipped += s.skipped;
    }
    const auto& t = report.summary(Category::Trend);
    const auto& v = report.summary(Category::Variance);
    const auto& s = report.summary(Category::Seasonality);
    const std::string counts = fmt::format("trend: {}/{}, variance: {}/{}, seasonality: {}/{}", t.detections,
                                           t.tests_run, v.detections, v.tests_run, s.detections, s.tests_run);

    std::string out = detections == 0
        ? fmt::format("No non-stationarity detected across {} run ({}).", plural(run, "test"), counts)
        : fmt::format("Non-stationarity detected in {} of {} run ({}).", detections, plural(run, "test"),
                      counts);
    out += fmt::format(" Trend diagnosis: {} - {}", to_string(report.trend_diagnosis.kind),
                       report.trend_diagnosis.explanation);
    if (skipped > 0) out += fmt::format(" {} skipped.", plural(skipped, "test"));
    return out;
}

// ---------------------------------------------------------------------------
// Tabular output

std::vector<TableRecord> to_table(const DiagnosticsReport& report) {
    std::vector<TableRecord> out;
    out.reserve(report.results.size());
    for (const auto& row : report.results) {
        out.push_back({row.test_id, std::string(to_string(row.category)), row.spec_or_period.value_or(""),
                       row.statistic, row.p_value, row.alpha, std::string(to_string(row.verdict)),
                       fmt::format("{}", fmt::join(row.notes, "; "))});
    }
    return out;
}

namespace {

std::string format_optional(const std::optional<double>& v) { return v ? fmt::format("{}", *v) : ""; }

std::optional<double> parse_optional_double(const std::string& s, std::size_t line) {
    if (s.empty()) return std::nullopt;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw Error(ErrorKind::ParseError, fmt::format("line {}: '{}' is not a number", line, s));
    }
    return v;
}

}  // namespace

std::string to_csv(const std::vector<TableRecord>& records) {
    std::string out = fmt::format("{}\n", fmt::join(kTableColumns, ","));
    for (const auto& r : records) {
        out += fmt::format("{},{},{},{},{},{},{},{}\n", csv::escape(r.test_id), csv::escape(r.category),
                           csv::escape(r.spec_or_period), format_optional(r.statistic),
                           format_optional(r.p_value), fmt::format("{}", r.alpha), csv::escape(r.verdict),
                           csv::escape(r.notes));
    }
    return out;
}

std::vector<TableRecord> parse_table_csv(std::string_view text) {
    std::vector<TableRecord> out;
    std::size_t line_no = 0;
    bool header = true;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        const auto fields = csv::split_line(line);
        if (fields.size() != kTableColumns.size()) {
            throw Error(ErrorKind::ParseError, fmt::format("line {}: expected {} fields, got {}", line_no,
                                                           kTableColumns.size(), fields.size()));
        }
        if (header) {
            header = false;
            continue;
        }
        TableRecord r;
        r.test_id = fields[0];
        r.category = fields[1];
        r.spec_or_period = fields[2];
        r.statistic = parse_optional_double(fields[3], line_no);
        r.p_value = parse_optional_double(fields[4], line_no);
        r.alpha = parse_optional_double(fields[5], line_no).value_or(0.0);
        r.verdict = fields[6];
        r.notes = fields[7];
        out.push_back(std::move(r));
    }
    return out;
}

std::string to_json(const std::vector<TableRecord>& records) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        nlohmann::ordered_json j;
        j["test_id"] = r.test_id;
        j["category"] = r.category;
        j["spec_or_period"] = r.spec_or_period;
        j["statistic"] = r.statistic ? nlohmann::ordered_json(*r.statistic) : nlohmann::ordered_json(nullptr);
        j["p_value"] = r.p_value ? nlohmann::ordered_json(*r.p_value) : nlohmann::ordered_json(nullptr);
        j["alpha"] = r.alpha;
        j["verdict"] = r.verdict;
        j["notes"] = r.notes;
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

std::vector<TableRecord> parse_table_json(std::string_view text) {
    std::vector<TableRecord> out;
    try {
        const auto arr = nlohmann::json::parse(text);
        for (const auto& j : arr) {
            TableRecord r;
            r.test_id = j.at("test_id").get<std::string>();
            r.category = j.at("category").get<std::string>();
            r.spec_or_period = j.at("spec_or_period").get<std::string>();
            if (!j.at("statistic").is_null()) r.statistic = j.at("statistic").get<double>();
            if (!j.at("p_value").is_null()) r.p_value = j.at("p_value").get<double>();
            r.alpha = j.at("alpha").get<double>();
            r.verdict = j.at("verdict").get<std::string>();
            r.notes = j.at("notes").get<std::string>();
            out.push_back(std::move(r));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Markdown

std::string format_iso8601(Instant t) {
    using namespace std::chrono;
    const auto day = floor<days>(t);
    const year_month_day ymd{day};
    const hh_mm_ss hms{t - day};
    return fmt::format("{:04d}-{:02d}-{:02d}T{:02d}:{:02d}:{:02d}Z", static_cast<int>(ymd.year()),
                       static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                       hms.hours().count(), hms.minutes().count(), hms.seconds().count());
}

namespace {

std::string num(const std::optional<double>& v) {
    if (!v) return "-";
    if (std::isnan(*v)) return "nan";
    std::string s = fmt::format("{:.4f}", *v);
    if (s == "-0.0000") s = "0.0000";
    return s;
}

std::string pval(const std::optional<double>& v) {
    if (v && *v < 1e-4) return "<0.0001";
    return num(v);
}

std::string md_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '|') out += '\\';
        out += c;
    }
    return out;
}

std::string row_label(const TestResult& r) {
    return r.spec_or_period ? fmt::format("{} ({})", r.test_id, *r.spec_or_period) : r.test_id;
}

}  // namespace

std::string to_markdown(const DiagnosticsReport& report, const std::optional<std::filesystem::path>& path) {
    std::ostringstream md;
    md << "# Stationarity diagnostics\n\n";
    md << "| Series | |\n|---|---|\n";
    md << "| Observations | " << report.n << " |\n";
    md << "| Start | " << format_iso8601(report.start) << " |\n";
    md << "| End | " << format_iso8601(report.end) << " |\n";
    md << "| Frequency | " << to_string(report.frequency.kind)
       << fmt::format(" (median spacing {} s)", report.frequency.median_spacing) << " |\n";
    md << "| Significance level | " << report.alpha << " |\n\n";

    md << "## Summary\n\n" << summarize(report) << "\n\n" << report.overall_note << "\n\n";
    md << "| Category | Rows | Run | Detections | Skipped |\n|---|---:|---:|---:|---:|\n";
    for (auto c : {Category::Trend, Category::Variance, Category::Seasonality}) {
        const auto& s = report.summary(c);
        md << fmt::format("| {} | {} | {} | {} | {} |\n", to_string(c), s.rows, s.tests_run, s.detections,
                          s.skipped);
    }
    md << "\n";

    md << "## Trend\n\n";
    md << "**Diagnosis: " << to_string(report.trend_diagnosis.kind) << ".** "
       << report.trend_diagnosis.explanation << "\n\n";
    md << "| Test | Specification | Statistic | p-value | 5% critical value | Lags | Break index | Verdict |\n";
    md << "|---|---|---:|---:|---:|---:|---:|---|\n";
    for (const auto& r : report.results) {
        if (r.category != Category::Trend) continue;
        md << fmt::format("| {} | {} | {} | {} | {} | {} | {} | {} |\n", r.test_id, r.spec_or_period.value_or("-"),
                          num(r.statistic), pval(r.p_value),
                          r.critical_values ? num(r.critical_values->five) : "-",
                          r.lags ? std::to_string(*r.lags) : "-",
                          r.break_index ? std::to_string(*r.break_index) : "-", to_string(r.verdict));
    }
    md << "\n";

    md << "## Variance\n\n";
    md << "| Test | Detail | Statistic | p-value | Verdict |\n|---|---|---:|---:|---|\n";
    for (const auto& r : report.results) {
        if (r.category != Category::Variance) continue;
        md << fmt::format("| {} | {} | {} | {} | {} |\n", r.test_id, r.spec_or_period.value_or("-"),
                          num(r.statistic), pval(r.p_value), to_string(r.verdict));
    }
    md << "\n";

    md << "## Seasonality\n\n";
    const bool any_seasonal = std::any_of(report.results.begin(), report.results.end(),
                                          [](const TestResult& r) { return r.category == Category::Seasonality; });
    if (!any_seasonal) {
        md << "No seasonal periods tested.\n\n";
    } else {
        md << "| Test | Cycle | Period | Statistic | p-value | Threshold | Verdict |\n";
        md << "|---|---|---:|---:|---:|---:|---|\n";
        for (const auto& r : report.results) {
            if (r.category != Category::Seasonality) continue;
            md << fmt::format("| {} | {} | {} | {} | {} | {} | {} |\n", r.test_id, r.spec_or_period.value_or("-"),
                              r.period ? std::to_string(*r.period) : "-", num(r.statistic), pval(r.p_value),
                              num(r.threshold), to_string(r.verdict));
        }
        md << "\n";
    }

    md << "## Notes\n\n";
    for (const auto& note : report.trend_diagnosis.notes) md << "- trend diagnosis: " << md_escape(note) << "\n";
    for (const auto& note : report.notes) md << "- series: " << md_escape(note) << "\n";
    for (const auto& r : report.results) {
        for (const auto& note : r.notes) md << "- " << row_label(r) << ": " << md_escape(note) << "\n";
    }

    std::string text = md.str();
    if (path) write_text_file(*path, text);
    return text;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorKind::FileWriteError, fmt::format("cannot open '{}' for writing", path.string()));
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    f.close();
    if (!f) throw Error(ErrorKind::FileWriteError, fmt::format("failed writing '{}'", path.string()));
}

}  // namespace stk
