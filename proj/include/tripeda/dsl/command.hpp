#pragma once

#include <tripeda/cleaning.hpp>
#include <tripeda/value.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace tripeda::dsl {

// One struct per statement of the analysis language.

struct Load {
    std::string path;
    friend auto operator==(const Load&, const Load&) -> bool = default;
};

struct Save {
    std::string path;
    friend auto operator==(const Save&, const Save&) -> bool = default;
};

struct Generate {
    std::uint64_t vehicles = 0;
    std::uint64_t trips = 0;
    std::optional<std::uint64_t> seed;
    std::optional<double> missing_fraction;
    std::optional<double> outlier_fraction;
    friend auto operator==(const Generate&, const Generate&) -> bool = default;
};

struct CountMissing {
    friend auto operator==(const CountMissing&, const CountMissing&) -> bool = default;
};

struct DropMissing {
    std::string column;
    friend auto operator==(const DropMissing&, const DropMissing&) -> bool = default;
};

struct Impute {
    std::string column;
    ImputeStrategy strategy = ImputeStrategy::Mean;
    friend auto operator==(const Impute&, const Impute&) -> bool = default;
};

struct Fill {
    std::string column;
    FillDirection direction = FillDirection::Forward;
    friend auto operator==(const Fill&, const Fill&) -> bool = default;
};

struct Flag {
    std::string column;
    friend auto operator==(const Flag&, const Flag&) -> bool = default;
};

struct Convert {
    std::string column;
    ColumnType target = ColumnType::Text;
    friend auto operator==(const Convert&, const Convert&) -> bool = default;
};

struct Summary {
    friend auto operator==(const Summary&, const Summary&) -> bool = default;
};

struct DetectOutliers {
    std::string column;
    OutlierMethod method = OutlierMethod::ZScore;
    double threshold = 3.0;  // z threshold, or the IQR multiplier k
    friend auto operator==(const DetectOutliers&, const DetectOutliers&) -> bool = default;
};

struct FilterOutliers {
    friend auto operator==(const FilterOutliers&, const FilterOutliers&) -> bool = default;
};

enum class Feature { DayOfWeek, TripDistance, VehicleAverageSpeed };

struct AddFeature {
    Feature feature = Feature::DayOfWeek;
    friend auto operator==(const AddFeature&, const AddFeature&) -> bool = default;
};

struct Segment {
    friend auto operator==(const Segment&, const Segment&) -> bool = default;
};

struct GroupMean {
    std::string target;
    std::string by;
    friend auto operator==(const GroupMean&, const GroupMean&) -> bool = default;
};

struct Correlate {
    std::vector<std::string> columns;
    friend auto operator==(const Correlate&, const Correlate&) -> bool = default;
};

struct TTest {
    std::string target;
    std::string first_key;
    std::string second_key;
    std::string group_column;
    friend auto operator==(const TTest&, const TTest&) -> bool = default;
};

enum class PlotKind { Boxplot, Bar, Heatmap };

struct Plot {
    PlotKind kind = PlotKind::Boxplot;
    std::vector<std::string> columns;  // boxplot/bar: the value column; heatmap: all columns
    std::string by;                    // bar only
    std::string path;
    friend auto operator==(const Plot&, const Plot&) -> bool = default;
};

struct Report {
    std::string path;
    friend auto operator==(const Report&, const Report&) -> bool = default;
};

using Command =
    std::variant<Load, Save, Generate, CountMissing, DropMissing, Impute, Fill, Flag, Convert,
                 Summary, DetectOutliers, FilterOutliers, AddFeature, Segment, GroupMean,
                 Correlate, TTest, Plot, Report>;

/// Parses exactly one statement. Throws SyntaxError with the byte offset of
/// the offending token.
auto parse_command(std::string_view line) -> Command;

/// Canonical statement text; parse_command(format_command(c)) == c.
auto format_command(const Command& command) -> std::string;

/// Statement heads accepted by parse_command, sorted.
auto statement_heads() -> const std::vector<std::string>&;

}  // namespace tripeda::dsl
