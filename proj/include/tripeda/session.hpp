#pragma once

#include <tripeda/cleaning.hpp>
#include <tripeda/datagen.hpp>
#include <tripeda/dsl/command.hpp>
#include <tripeda/eda.hpp>
#include <tripeda/error.hpp>
#include <tripeda/frame.hpp>
#include <tripeda/stats.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tripeda {

/// A failed statement. The message starts with the statement text.
class CommandError : public Error {
public:
    using Error::Error;
};

struct LogEntry {
    std::string command;  // canonical statement text, replayable
    std::string outcome;  // one-line summary

    friend auto operator==(const LogEntry&, const LogEntry&) -> bool = default;
};

struct ChartRecord {
    std::string kind;  // "boxplot", "bar" or "heatmap"
    std::filesystem::path path;
};

struct TTestRecord {
    std::string target;
    std::string group_column;
    std::string first_key;
    std::string second_key;
    TTestResult result;
};

struct Session {
    std::optional<Frame> current;
    std::optional<Manifest> manifest;  // set by generate, cleared by load
    std::optional<OutlierReport> last_outliers;
    bool outliers_pending = false;  // last_outliers still indexes `current`
    std::optional<SummaryTable> last_summary;
    std::optional<TTestRecord> last_ttest;
    std::vector<ChartRecord> charts;
    std::vector<LogEntry> log;  // append-only
};

struct ExecOptions {
    std::uint64_t default_seed = 42;  // for `generate` without `seed`
    std::filesystem::path base_dir;   // relative file paths resolve here
};

struct ExecResult {
    Session session;
    std::string output;
};

/// Runs one statement against a copy of `session`. Throws CommandError and
/// leaves the input untouched on failure.
auto execute(const dsl::Command& command, const Session& session, const ExecOptions& options = {})
    -> ExecResult;
/// Parses then executes; syntax errors also surface as CommandError.
auto execute_line(std::string_view line, const Session& session, const ExecOptions& options = {})
    -> ExecResult;

struct ScriptOptions {
    ExecOptions exec;
    bool keep_going = false;
};

struct ScriptResult {
    Session session;
    std::string transcript;  // per-line outcomes; empty for an empty script
    std::size_t failures = 0;
};

/// Blank lines and lines starting with `#` are skipped. Errors are reported
/// as `line k: ...` with 1-based k; without keep_going the first error stops
/// the run.
auto run_script(std::span<const std::string> lines, const Session& session,
                const ScriptOptions& options = {}) -> ScriptResult;

}  // namespace tripeda
