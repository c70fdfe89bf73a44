#pragma once

#include <tripeda/frame.hpp>

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tripeda {

/// Linear interpolation between closest ranks: rank h = (n-1)*p/100 on the
/// sorted values, result v[floor h] + frac(h) * (v[floor h + 1] - v[floor h]).
/// `p` is in [0, 100]. Throws on empty input.
auto percentile(std::span<const double> values, double p) -> double;
/// Same rule on input that is already sorted ascending.
auto percentile_sorted(std::span<const double> sorted, double p) -> double;

struct ColumnSummary {
    std::string name;
    std::size_t count = 0;
    std::optional<double> mean;
    std::optional<double> std;  // sample (n-1); absent when count < 2
    std::optional<double> min;
    std::optional<double> p25;
    std::optional<double> p50;
    std::optional<double> p75;
    std::optional<double> max;
};

struct SummaryTable {
    std::vector<ColumnSummary> columns;

    /// Statistic-per-row layout: `count`, `mean`, `std`, `min`, `25%`, `50%`,
    /// `75%`, `max` against one column per summarized field.
    auto to_text() const -> std::string;
    auto to_csv() const -> std::string;
};

/// One summary per Int/Float column, computed over non-missing values.
auto describe(const Frame& frame) -> SummaryTable;

enum class TimeSegment { MidnightToMorning, MorningToNoon, NoonToEvening, EveningToMidnight };

inline constexpr std::array<TimeSegment, 4> kTimeSegments{
    TimeSegment::MidnightToMorning, TimeSegment::MorningToNoon, TimeSegment::NoonToEvening,
    TimeSegment::EveningToMidnight};

auto to_string(TimeSegment segment) -> std::string_view;
/// Half-open six-hour quarters starting at 00:00, 06:00, 12:00 and 18:00.
auto classify_time_of_day(const Timestamp& ts) -> TimeSegment;

/// Appends Text column `time_of_day`.
auto segment_time_of_day(const Frame& frame, std::string_view ts_column) -> Frame;

struct Group {
    std::string key;
    std::size_t count = 0;
    double mean = 0.0;

    friend auto operator==(const Group&, const Group&) -> bool = default;
};

struct GroupedStats {
    std::string key_column;
    std::string target_column;
    std::vector<Group> groups;  // first-appearance order
};

/// Rows with a missing key or target are skipped. Keys compare by their text
/// form.
auto group_mean(const Frame& frame, std::string_view by, std::string_view target)
    -> GroupedStats;

/// When every key names a TimeSegment, returns the groups in clock order;
/// otherwise returns the input unchanged.
auto in_segment_order(const GroupedStats& stats) -> GroupedStats;

struct CorrelationMatrix {
    std::vector<std::string> labels;
    std::vector<double> values;  // row-major, labels.size() squared

    auto size() const -> std::size_t { return labels.size(); }
    auto at(std::size_t row, std::size_t col) const -> double {
        return values[row * labels.size() + col];
    }
    auto to_text() const -> std::string;
};

/// Pearson r for every pair, each pair using the rows where both are present.
auto correlation_matrix(const Frame& frame, std::span<const std::string> columns)
    -> CorrelationMatrix;

}  // namespace tripeda
