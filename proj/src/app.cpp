#include "stk/app.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <ostream>

#include "stk/error.hpp"

namespace stk {

namespace {

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::IoError:
        case ErrorKind::FileWriteError: return kExitIo;
        default: return kExitInvalid;
    }
}

std::string compact(const std::optional<double>& v) {
    if (!v) return "-";
    std::string s = fmt::format("{:.4f}", *v);
    if (s == "-0.0000") s = "0.0000";
    return s;
}

void print_rows(const DiagnosticsReport& report, std::ostream& out) {
    for (const auto& r : report.results) {
        const std::string label =
            r.spec_or_period ? fmt::format("{} [{}]", r.test_id, *r.spec_or_period) : r.test_id;
        fmt::print(out, "  {:<36} stat={:>10}  p={:>7}  {}\n", label, compact(r.statistic), compact(r.p_value),
                   to_string(r.verdict));
    }
    for (const auto& note : report.notes) fmt::print(out, "  note: {}\n", note);
}

std::optional<FrequencyKind> parse_frequency(std::string_view s) {
    for (auto k : {FrequencyKind::Hourly, FrequencyKind::Daily, FrequencyKind::Weekly, FrequencyKind::Monthly,
                   FrequencyKind::Quarterly, FrequencyKind::Yearly}) {
        if (to_string(k) == s) return k;
    }
    return std::nullopt;
}

std::pair<double, double> parse_pair(const std::string& text, std::string_view flag) {
    const auto comma = text.find(',');
    try {
        if (comma == std::string::npos) throw std::invalid_argument("missing comma");
        std::size_t used = 0;
        const double a = std::stod(text.substr(0, comma), &used);
        if (used != comma) throw std::invalid_argument("trailing text");
        const std::string rest = text.substr(comma + 1);
        const double b = std::stod(rest, &used);
        if (used != rest.size()) throw std::invalid_argument("trailing text");
        return {a, b};
    } catch (const std::exception&) {
        throw Error(ErrorKind::BadSpec, fmt::format("{} expects two numbers 'a,b', got '{}'", flag, text));
    }
}

}  // namespace

int run_analyze(const AnalyzeOptions& options, std::ostream& out, std::ostream& err) {
    try {
        validate(options.detect);
        const auto t0 = std::chrono::steady_clock::now();
        const TimeSeries ts = read_series_csv(options.input, options.csv);
        const DiagnosticsReport report = detect_all(ts, options.detect, options.execution);
        const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        out << summarize(report) << "\n";
        print_rows(report, out);
        if (options.verbose) {
            fmt::print(out, "run: input={} rows={} threads={} elapsed={:.3f}s\n", options.input.string(), ts.size(),
                       options.execution == Execution::Parallel ? max_threads() : 1, elapsed);
        }

        if (options.markdown_path) (void)to_markdown(report, *options.markdown_path);
        if (options.table_path) {
            const TableFormat format = options.table_format.value_or(
                options.table_path->extension() == ".json" ? TableFormat::Json : TableFormat::Csv);
            const auto records = to_table(report);
            write_text_file(*options.table_path, format == TableFormat::Json ? to_json(records) : to_csv(records));
        }

        const bool detected = std::any_of(report.results.begin(), report.results.end(), [](const TestResult& r) {
            return r.verdict == Verdict::NonStationarityDetected;
        });
        return options.fail_on_detection && detected ? kExitDetection : kExitOk;
    } catch (const Error& e) {
        fmt::print(err, "error: {}\n", e.what());
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitIo;
    }
}

std::string synth_csv(const TimeSeries& ts) {
    std::string text = "datetime,value\n";
    const auto times = ts.timestamps();
    const auto values = ts.values();
    for (std::size_t i = 0; i < ts.size(); ++i) {
        text += fmt::format("{},{}\n", format_iso8601(times[i]), values[i]);
    }
    return text;
}

int run_synth(const SynthOptions& options, std::ostream& out, std::ostream& err) {
    try {
        const TimeSeries ts = generate(options.spec);
        write_text_file(options.output, synth_csv(ts));
        fmt::print(out, "wrote {} rows to {}\n", ts.size(), options.output.string());
        return kExitOk;
    } catch (const Error& e) {
        fmt::print(err, "error: {}\n", e.what());
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitIo;
    }
}

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Stationarity diagnostics for univariate time series", "stk"};
    app.require_subcommand(1);

    AnalyzeOptions analyze;
    std::string table_format;
    bool parallel = false;
    std::size_t arch_lags = 0;
    auto* a = app.add_subcommand("analyze", "Run the full diagnostic battery on a CSV file");
    a->add_option("-i,--input", analyze.input, "CSV file with a header row")->required();
    a->add_option("--datetime-column", analyze.csv.datetime_column, "Name or 0-based index")
        ->capture_default_str();
    a->add_option("--value-column", analyze.csv.value_column, "Name or 0-based index")->capture_default_str();
    a->add_option("--datetime-format", analyze.csv.datetime_format, "strptime pattern (default: ISO-8601)");
    a->add_option("--alpha", analyze.detect.alpha, "Significance level in (0, 0.5]")->capture_default_str();
    a->add_option("--segments", analyze.detect.variance_segments, "Segments for Levene and Bartlett (2-6)")
        ->capture_default_str();
    auto* arch_opt = a->add_option("--arch-lags", arch_lags, "ARCH LM lags (default: min(10, n/20))");
    a->add_option("--seasonal-threshold", analyze.detect.seasonal_strength_threshold,
                  "Seasonal strength threshold")
        ->capture_default_str();
    a->add_flag("--robust-stl", analyze.detect.stl_robust, "Use robust STL iterations");
    a->add_option("--markdown", analyze.markdown_path, "Write a markdown report");
    a->add_option("--table", analyze.table_path, "Write the result table");
    a->add_option("--table-format", table_format, "csv or json (default: from extension)")
        ->check(CLI::IsMember({"csv", "json"}));
    a->add_flag("--fail-on-detection", analyze.fail_on_detection, "Exit with 3 when any test detects");
    a->add_flag("--parallel", parallel, "Run the tests on several threads");
    a->add_flag("-v,--verbose", analyze.verbose, "Print run metadata");

    SynthOptions synth;
    std::string freq = "daily";
    std::string start;
    std::string variance_break;
    std::string level_break;
    std::string arch;
    auto* s = app.add_subcommand("synth", "Write a synthetic series as CSV");
    s->add_option("--n", synth.spec.n, "Number of observations")->capture_default_str();
    s->add_option("--freq", freq, "hourly, daily, weekly, monthly, quarterly or yearly")->capture_default_str();
    s->add_option("--start", start, "First timestamp (ISO-8601, default 2020-01-01)");
    s->add_option("--seed", synth.spec.seed)->capture_default_str();
    s->add_option("--baseline", synth.spec.baseline)->capture_default_str();
    s->add_option("--slope", synth.spec.trend_slope, "Trend per step")->capture_default_str();
    s->add_option("--amplitude", synth.spec.seasonal_amplitude, "Sine amplitude")->capture_default_str();
    s->add_option("--period", synth.spec.seasonal_period, "Sine period in steps")->capture_default_str();
    s->add_option("--sigma", synth.spec.noise_sigma, "Noise standard deviation")->capture_default_str();
    s->add_option("--ar", synth.spec.ar_coefficient, "AR(1) coefficient of the noise")->capture_default_str();
    s->add_flag("--unit-root", synth.spec.unit_root, "Random-walk noise");
    s->add_option("--variance-break", variance_break, "position,multiplier");
    s->add_option("--level-break", level_break, "position,shift");
    s->add_option("--arch", arch, "omega,alpha1");
    s->add_option("-o,--output", synth.output, "Output CSV path")->required();

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return kExitOk;
        }
        fmt::print(err, "error: {}\n", e.what());
        return kExitInvalid;
    }

    if (a->parsed()) {
        if (*arch_opt) analyze.detect.arch_lags = arch_lags;
        if (!table_format.empty()) {
            analyze.table_format = table_format == "json" ? TableFormat::Json : TableFormat::Csv;
        }
        analyze.execution = parallel ? Execution::Parallel : Execution::Serial;
        return run_analyze(analyze, out, err);
    }

    try {
        const auto kind = parse_frequency(freq);
        if (!kind) throw Error(ErrorKind::BadSpec, fmt::format("unknown frequency '{}'", freq));
        synth.spec.freq_kind = *kind;
        if (!start.empty()) {
            const auto t = parse_iso8601(start);
            if (!t) throw Error(ErrorKind::BadSpec, fmt::format("cannot parse --start '{}'", start));
            synth.spec.start = *t;
        }
        if (!variance_break.empty()) {
            const auto [pos, mult] = parse_pair(variance_break, "--variance-break");
            synth.spec.variance_break = VarianceBreak{pos, mult};
        }
        if (!level_break.empty()) {
            const auto [pos, shift] = parse_pair(level_break, "--level-break");
            synth.spec.level_break = LevelBreak{pos, shift};
        }
        if (!arch.empty()) {
            const auto [omega, alpha1] = parse_pair(arch, "--arch");
            synth.spec.arch = ArchSpec{omega, alpha1};
        }
    } catch (const Error& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitInvalid;
    }
    return run_synth(synth, out, err);
}

}  // namespace stk
