#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "stk/csv_input.hpp"
#include "stk/execution.hpp"
#include "stk/report.hpp"
#include "stk/synth.hpp"

namespace stk {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitIo = 1,
    kExitInvalid = 2,
    kExitDetection = 3,
};

enum class TableFormat { Csv, Json };

struct AnalyzeOptions {
    std::filesystem::path input;
    CsvReadOptions csv;
    DetectConfig detect;
    std::optional<std::filesystem::path> markdown_path;
    std::optional<std::filesystem::path> table_path;
    /// Inferred from the table path's extension when absent (".json" means JSON).
    std::optional<TableFormat> table_format;
    bool fail_on_detection = false;
    bool verbose = false;
    Execution execution = Execution::Serial;
};

struct SynthOptions {
    SynthSpec spec;
    std::filesystem::path output;
};

/// Loads the CSV, runs the battery, prints the summary and writes the
/// requested artifacts. Never throws; errors go to `err` and the exit code.
int run_analyze(const AnalyzeOptions& options, std::ostream& out, std::ostream& err);

/// Writes a generated series as a `datetime,value` CSV.
int run_synth(const SynthOptions& options, std::ostream& out, std::ostream& err);

/// Renders a generated series as CSV text.
[[nodiscard]] std::string synth_csv(const TimeSeries& ts);

/// Full command line (without the program name): `analyze ...` or `synth ...`.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace stk
