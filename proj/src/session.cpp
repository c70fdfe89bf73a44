#include <tripeda/session.hpp>

#include <tripeda/csv.hpp>
#include <tripeda/dsl/token.hpp>
#include <tripeda/features.hpp>
#include <tripeda/report.hpp>
#include <tripeda/viz.hpp>

#include <fmt/core.h>
#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <set>

namespace tripeda {

namespace {

constexpr std::string_view kTimestampColumn = "timestamp";
constexpr std::string_view kVehicleColumn = "vehicle_id";
constexpr std::string_view kSpeedColumn = "average_speed";
constexpr std::string_view kSegmentColumn = "time_of_day";

auto type_word(ColumnType type) -> std::string_view {
    return type == ColumnType::Timestamp ? "datetime" : to_string(type);
}

auto strategy_word(ImputeStrategy s) -> std::string_view {
    switch (s) {
        case ImputeStrategy::Mean: return "mean";
        case ImputeStrategy::Median: return "median";
        case ImputeStrategy::Mode: return "mode";
    }
    return "?";
}

auto first_line(std::string_view text) -> std::string {
    return std::string(text.substr(0, text.find('\n')));
}

auto missing_in(const Frame& frame, std::string_view column) -> std::size_t {
    const auto& values = frame.column(column).values;
    return static_cast<std::size_t>(std::count_if(values.begin(), values.end(), is_missing));
}

auto shape(const Frame& frame) -> std::string {
    return fmt::format("{} rows x {} columns", frame.row_count(), frame.column_count());
}

auto row_list(std::span<const std::size_t> rows) -> std::string {
    constexpr std::size_t kShown = 20;
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < rows.size() && i < kShown; ++i) {
        parts.push_back(std::to_string(rows[i]));
    }
    auto out = fmt::format("{}", fmt::join(parts, ", "));
    if (rows.size() > kShown) {
        out += fmt::format(", ... ({} more)", rows.size() - kShown);
    }
    return out;
}

// Applies one statement to `s` in place; `s` is a private copy, so a throw
// anywhere leaves the caller's session as it was.
class Interpreter {
public:
    Interpreter(Session& session, const ExecOptions& options, std::string& canonical)
        : s_(session), options_(options), canonical_(canonical) {}

    // Log line for multi-line outputs; empty means "first line of output".
    std::string outcome;

    auto operator()(const dsl::Load& c) -> std::string {
        const auto path = resolve(c.path);
        s_.current = read_csv_file(path);
        s_.manifest.reset();
        reset_outliers();
        return fmt::format("loaded {} from {}", shape(*s_.current), c.path);
    }

    auto operator()(const dsl::Save& c) -> std::string {
        const auto& frame = need_frame();
        write_csv_file(frame, resolve(c.path));
        return fmt::format("saved {} to {}", shape(frame), c.path);
    }

    auto operator()(const dsl::Generate& c) -> std::string {
        GenConfig config;
        // Clamped so the cast stays in range; validate() rejects the excess.
        constexpr std::uint64_t kCap = std::uint64_t{1} << 40;
        config.num_vehicles = static_cast<std::int64_t>(std::min(c.vehicles, kCap));
        config.trips_per_vehicle = static_cast<std::int64_t>(std::min(c.trips, kCap));
        config.seed = c.seed.value_or(options_.default_seed);
        if (c.missing_fraction) {
            config.missing_ts_fraction = *c.missing_fraction;
        }
        if (c.outlier_fraction) {
            config.outlier_fraction = *c.outlier_fraction;
        }
        auto generated = generate(config);
        // The log records the seed actually used so a replay is exact.
        auto resolved = c;
        resolved.seed = config.seed;
        canonical_ = dsl::format_command(resolved);

        const auto missing = generated.manifest.missing_rows.size();
        const auto outliers = generated.manifest.outlier_rows.size();
        s_.current = std::move(generated.frame);
        s_.manifest = std::move(generated.manifest);
        reset_outliers();
        return fmt::format(
            "generated {} (seed {}); injected {} missing timestamps and {} speed outliers",
            shape(*s_.current), config.seed, missing, outliers);
    }

    auto operator()(const dsl::CountMissing&) -> std::string {
        const auto report = count_missing(need_frame());
        std::size_t total = 0;
        for (const auto& entry : report.columns) {
            total += entry.missing;
        }
        return fmt::format("{} missing values in {} rows\n{}", total, report.total_rows,
                           report.to_text());
    }

    auto operator()(const dsl::DropMissing& c) -> std::string {
        const auto& before = need_frame();
        const std::vector<std::string> columns{c.column};
        auto after = drop_missing(before, columns);
        const auto dropped = before.row_count() - after.row_count();
        s_.current = std::move(after);
        reset_outliers();
        return fmt::format("dropped {} rows where {} is missing; {} rows remain", dropped,
                           c.column, s_.current->row_count());
    }

    auto operator()(const dsl::Impute& c) -> std::string {
        const auto& before = need_frame();
        const auto count = missing_in(before, c.column);
        s_.current = impute(before, c.column, c.strategy);
        return fmt::format("imputed {} values in {} with the {}", count, c.column,
                           strategy_word(c.strategy));
    }

    auto operator()(const dsl::Fill& c) -> std::string {
        const auto& before = need_frame();
        const auto count = missing_in(before, c.column);
        auto after = fill_directional(before, c.column, c.direction);
        const auto filled = count - missing_in(after, c.column);
        s_.current = std::move(after);
        return fmt::format("filled {} of {} missing values in {} {}", filled, count, c.column,
                           c.direction == FillDirection::Forward ? "forward" : "backward");
    }

    auto operator()(const dsl::Flag& c) -> std::string {
        const auto& before = need_frame();
        const auto count = missing_in(before, c.column);
        s_.current = flag_missing(before, c.column);
        return fmt::format("added column {}_missing ({} rows flagged)", c.column, count);
    }

    auto operator()(const dsl::Convert& c) -> std::string {
        s_.current = convert_column(need_frame(), c.column, c.target);
        return fmt::format("converted {} to {}", c.column, type_word(c.target));
    }

    auto operator()(const dsl::Summary&) -> std::string {
        auto table = describe(need_frame());
        auto text = table.to_text();
        outcome = fmt::format("summarized {} numeric columns", table.columns.size());
        s_.last_summary = std::move(table);
        return text;
    }

    auto operator()(const dsl::DetectOutliers& c) -> std::string {
        const auto& frame = need_frame();
        auto report = c.method == OutlierMethod::ZScore
                          ? zscore_outliers(frame, c.column, c.threshold)
                          : iqr_outliers(frame, c.column, c.threshold);
        auto text = fmt::format("{} outliers in {} ({} {} {})", report.indices.size(), c.column,
                                to_string(c.method),
                                c.method == OutlierMethod::ZScore ? "threshold" : "k",
                                format_double(c.threshold));
        if (!report.indices.empty()) {
            text += "\nrows: " + row_list(report.indices);
        }
        s_.last_outliers = std::move(report);
        s_.outliers_pending = true;
        return text;
    }

    auto operator()(const dsl::FilterOutliers&) -> std::string {
        const auto& frame = need_frame();
        if (!s_.last_outliers || !s_.outliers_pending) {
            throw Error("no outlier report to apply; run `detect outliers in <column> using ...` "
                        "on the current rows first");
        }
        auto after = filter_outliers(frame, *s_.last_outliers);
        const auto removed = frame.row_count() - after.row_count();
        s_.current = std::move(after);
        s_.outliers_pending = false;
        return fmt::format("removed {} outlier rows; {} rows remain", removed,
                           s_.current->row_count());
    }

    auto operator()(const dsl::AddFeature& c) -> std::string {
        const auto& frame = need_frame();
        std::string_view column;
        switch (c.feature) {
            case dsl::Feature::DayOfWeek:
                s_.current = add_day_of_week(frame, kTimestampColumn);
                column = kDayOfWeekColumn;
                break;
            case dsl::Feature::TripDistance:
                s_.current = add_trip_distance(frame);
                column = kTripDistanceColumn;
                break;
            case dsl::Feature::VehicleAverageSpeed:
                s_.current = add_vehicle_avg_speed(frame, kVehicleColumn, kSpeedColumn);
                column = kVehicleAvgSpeedColumn;
                break;
        }
        return fmt::format("added column {}", column);
    }

    auto operator()(const dsl::Segment&) -> std::string {
        s_.current = segment_time_of_day(need_frame(), kTimestampColumn);
        const auto& labels = s_.current->column(kSegmentColumn).values;
        std::string text = fmt::format("added column {}", kSegmentColumn);
        for (const auto segment : kTimeSegments) {
            const Value label{std::string(to_string(segment))};
            text += fmt::format("\n{}: {} rows", to_string(segment),
                                std::count(labels.begin(), labels.end(), label));
        }
        return text;
    }

    auto operator()(const dsl::GroupMean& c) -> std::string {
        const auto stats = in_segment_order(group_mean(need_frame(), c.by, c.target));
        outcome = fmt::format("mean of {} for {} groups of {}", c.target, stats.groups.size(),
                              c.by);
        std::size_t width = c.by.size();
        for (const auto& g : stats.groups) {
            width = std::max(width, g.key.size());
        }
        std::string text = fmt::format("{:<{}}  {:>6}  {:>12}", c.by, width, "count",
                                       "mean_" + c.target);
        for (const auto& g : stats.groups) {
            text += fmt::format("\n{:<{}}  {:>6}  {:>12.6f}", g.key, width, g.count, g.mean);
        }
        return text;
    }

    auto operator()(const dsl::Correlate& c) -> std::string {
        const auto matrix = correlation_matrix(need_frame(), c.columns);
        outcome = fmt::format("{0}x{0} correlation matrix", matrix.size());
        return matrix.to_text();
    }

    auto operator()(const dsl::TTest& c) -> std::string {
        const auto& frame = need_frame();
        const auto& target = require_numeric(frame, c.target);
        const auto& groups = frame.column(c.group_column);
        std::vector<double> first;
        std::vector<double> second;
        std::set<std::string> seen;
        for (std::size_t i = 0; i < frame.row_count(); ++i) {
            if (is_missing(groups.values[i])) {
                continue;
            }
            const auto key = format_value(groups.values[i]);
            seen.insert(key);
            const auto value = as_double(target.values[i]);
            if (!value) {
                continue;
            }
            if (key == c.first_key) {
                first.push_back(*value);
            } else if (key == c.second_key) {
                second.push_back(*value);
            }
        }
        for (const auto* key : {&c.first_key, &c.second_key}) {
            if (!seen.contains(*key)) {
                throw Error(fmt::format("no rows with {} = \"{}\"; values present: {}",
                                        c.group_column, *key, fmt::join(seen, ", ")));
            }
        }
        TTestRecord record{c.target, c.group_column, c.first_key, c.second_key,
                           ttest_two_sample(first, second, TTestPolicy::Auto)};
        auto text = format_ttest(record);
        const auto& r = record.result;
        outcome = fmt::format("{} t-test: t = {:.6f}, df = {:.6f}, p = {:.6f}",
                              to_string(r.method), r.t, r.df, r.p_value);
        s_.last_ttest = std::move(record);
        return text;
    }

    auto operator()(const dsl::Plot& c) -> std::string {
        const auto& frame = need_frame();
        const auto path = resolve(c.path);
        SvgDocument doc;
        std::string kind;
        switch (c.kind) {
            case dsl::PlotKind::Boxplot: {
                const auto& column = c.columns.at(0);
                const auto stats = boxplot_stats(frame, column);
                const auto& values = require_numeric(frame, column).values;
                std::vector<double> outliers;
                for (const auto row : stats.outlier_indices) {
                    outliers.push_back(*as_double(values[row]));
                }
                PlotSpec spec;
                spec.title = fmt::format("Distribution of {}", column);
                doc = render_boxplot(stats, outliers, spec);
                kind = "boxplot";
                break;
            }
            case dsl::PlotKind::Bar: {
                const auto stats =
                    in_segment_order(group_mean(frame, c.by, c.columns.at(0)));
                PlotSpec spec;
                spec.title = fmt::format("Mean {} by {}", c.columns.at(0), c.by);
                doc = render_bar(stats, spec);
                kind = "bar";
                break;
            }
            case dsl::PlotKind::Heatmap: {
                PlotSpec spec;
                spec.title = "Correlation matrix";
                doc = render_heatmap(correlation_matrix(frame, c.columns), spec);
                kind = "heatmap";
                break;
            }
        }
        doc.save(path);
        s_.charts.push_back({kind, path});
        return fmt::format("wrote {} chart to {}", kind, c.path);
    }

    auto operator()(const dsl::Report& c) -> std::string {
        const auto path = resolve(c.path);
        std::error_code ignored;
        if (path.has_parent_path()) {
            std::filesystem::create_directories(path.parent_path(), ignored);
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw Error(fmt::format("cannot open {} for writing", path.string()));
        }
        out << emit_report(s_, path.parent_path());
        if (!out.flush()) {
            throw Error(fmt::format("failed writing {}", path.string()));
        }
        return fmt::format("wrote report to {}", c.path);
    }

private:
    auto need_frame() const -> const Frame& {
        if (!s_.current) {
            throw Error(
                "no dataset loaded; start with `load \"file.csv\"` or `generate N vehicles M "
                "trips`");
        }
        return *s_.current;
    }

    auto resolve(const std::string& path) const -> std::filesystem::path {
        std::filesystem::path p(path);
        if (p.is_relative() && !options_.base_dir.empty()) {
            return options_.base_dir / p;
        }
        return p;
    }

    void reset_outliers() { s_.outliers_pending = false; }

    Session& s_;
    const ExecOptions& options_;
    std::string& canonical_;
};

}  // namespace

auto execute(const dsl::Command& command, const Session& session, const ExecOptions& options)
    -> ExecResult {
    std::string canonical = dsl::format_command(command);
    Session next = session;
    std::string output;
    std::string outcome;
    try {
        Interpreter interpreter(next, options, canonical);
        output = std::visit(interpreter, command);
        outcome = interpreter.outcome.empty() ? first_line(output) : interpreter.outcome;
    } catch (const std::exception& e) {
        throw CommandError(fmt::format("{}: {}", canonical, e.what()));
    }
    next.log.push_back({canonical, std::move(outcome)});
    return {std::move(next), std::move(output)};
}

auto execute_line(std::string_view line, const Session& session, const ExecOptions& options)
    -> ExecResult {
    dsl::Command command;
    try {
        command = dsl::parse_command(line);
    } catch (const dsl::SyntaxError& e) {
        throw CommandError(fmt::format("{}: {}", line, e.what()));
    }
    return execute(command, session, options);
}

auto run_script(std::span<const std::string> lines, const Session& session,
                const ScriptOptions& options) -> ScriptResult {
    ScriptResult result{session, {}, 0};
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::string_view line = lines[i];
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string_view::npos || line[first] == '#') {
            continue;
        }
        line = line.substr(first);
        line = line.substr(0, line.find_last_not_of(" \t\r") + 1);
        try {
            auto step = execute_line(line, result.session, options.exec);
            result.session = std::move(step.session);
            result.transcript += fmt::format("> {}\n{}\n", line, step.output);
        } catch (const CommandError& e) {
            ++result.failures;
            result.transcript += fmt::format("> {}\nline {}: error: {}\n", line, i + 1, e.what());
            if (!options.keep_going) {
                break;
            }
        }
    }
    return result;
}

}  // namespace tripeda
