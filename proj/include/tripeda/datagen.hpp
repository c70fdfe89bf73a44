#pragma once

#include <tripeda/frame.hpp>

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace tripeda {

inline constexpr std::string_view kTelematicsHeader =
    "vehicle_id,timestamp,start_latitude,start_longitude,end_latitude,end_longitude,average_speed";

inline constexpr double kMinBackgroundSpeed = 5.0;
inline constexpr double kMaxBackgroundSpeed = 90.0;
inline constexpr std::int64_t kMaxGeneratedRows = 10'000'000;

struct GenConfig {
    std::int64_t num_vehicles = 50;
    std::int64_t trips_per_vehicle = 10;
    std::uint64_t seed = 42;
    double speed_mean = 50.0;
    double speed_std = 20.0;
    std::pair<double, double> lat_range{33.0, 34.0};
    std::pair<double, double> lon_range{-118.5, -117.5};
    // Monday 2023-01-02 through Sunday 2023-01-08.
    Timestamp time_start = Timestamp::from_civil(2023, 1, 2, 0, 0, 0);
    Timestamp time_end = Timestamp::from_civil(2023, 1, 8, 23, 59, 59);
    double missing_ts_fraction = 0.05;
    double outlier_fraction = 0.02;
    double outlier_speed = 1000.0;

    /// Throws ConfigError naming the first offending field.
    void validate() const;
};

/// Ground truth for the anomalies a generator run injected. Row indices are
/// 0-based positions in the generated frame, sorted ascending.
struct Manifest {
    std::uint64_t seed = 0;
    std::vector<std::size_t> missing_rows;
    std::vector<std::size_t> outlier_rows;
};

struct Generated {
    Frame frame;
    Manifest manifest;
};

/// Synthetic trips, one block of rows per vehicle. The timestamp column is
/// Text, as a freshly exported dataset would be; convert it before use.
auto generate(const GenConfig& config) -> Generated;

/// `{seed, missing_rows, outlier_rows, config}`
auto manifest_json(const GenConfig& config, const Manifest& manifest) -> nlohmann::json;

struct Injection {
    Frame frame;
    std::vector<std::size_t> rows;
};

/// Sets exactly round(rows * fraction) currently-present values to Missing.
auto inject_missing(const Frame& frame, std::string_view column, double fraction,
                    std::uint64_t seed) -> Injection;

/// Replaces exactly round(rows * fraction) entries of a numeric column with
/// `value`, drawing positions from `eligible` (all rows when absent).
auto inject_outliers(const Frame& frame, std::string_view column, double fraction,
                     const Value& value, std::uint64_t seed,
                     const std::optional<std::vector<std::size_t>>& eligible = std::nullopt)
    -> Injection;

}  // namespace tripeda
