#pragma once

#include <tripeda/frame.hpp>

#include <json.hpp>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tripeda {

struct MissingReport {
    struct Entry {
        std::string name;
        std::size_t missing = 0;
    };
    std::vector<Entry> columns;
    std::size_t total_rows = 0;

    auto count_for(std::string_view name) const -> std::size_t;
    /// One `name: count` line per column.
    auto to_text() const -> std::string;
};

auto count_missing(const Frame& frame) -> MissingReport;

/// Removes rows where any listed column is Missing; survivors keep their order.
auto drop_missing(const Frame& frame, std::span<const std::string> columns) -> Frame;

enum class ImputeStrategy { Mean, Median, Mode };
enum class FillDirection { Forward, Backward };

/// Int columns round Mean/Median half away from zero. Mode ties go to the
/// value seen first.
auto impute(const Frame& frame, std::string_view column, ImputeStrategy strategy) -> Frame;
auto fill_directional(const Frame& frame, std::string_view column, FillDirection direction)
    -> Frame;
/// Appends Bool column `<column>_missing`.
auto flag_missing(const Frame& frame, std::string_view column) -> Frame;

struct BoxplotStats {
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double iqr = 0.0;
    double whisker_low = 0.0;
    double whisker_high = 0.0;
    std::vector<std::size_t> outlier_indices;
};

/// Quartiles share eda::percentile's rule; fences sit 1.5 IQR beyond the box.
auto boxplot_stats(const Frame& frame, std::string_view column) -> BoxplotStats;

enum class OutlierMethod { ZScore, IQR };

auto to_string(OutlierMethod method) -> std::string_view;

struct OutlierReport {
    OutlierMethod method = OutlierMethod::ZScore;
    double threshold = 0.0;
    std::string column;
    std::vector<std::size_t> indices;  // strictly increasing row positions
    std::vector<double> scores;        // parallel to indices

    auto to_json() const -> nlohmann::json;
};

/// z = (x - mean) / sigma with the population sigma (divisor n); flags
/// |z| > threshold. Missing rows are never flagged.
auto zscore_outliers(const Frame& frame, std::string_view column, double threshold)
    -> OutlierReport;

/// Flags values outside [q1 - k*iqr, q3 + k*iqr]. Scores are the signed
/// distance beyond the nearer fence in IQR units, or 0 when the IQR is 0.
auto iqr_outliers(const Frame& frame, std::string_view column, double k = 1.5)
    -> OutlierReport;

auto filter_outliers(const Frame& frame, const OutlierReport& report) -> Frame;

}  // namespace tripeda
