#include <tripeda/datagen.hpp>
#include <tripeda/error.hpp>
#include <tripeda/rng.hpp>

#include <fmt/core.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tripeda {

namespace {

auto anomaly_count(std::size_t rows, double fraction) -> std::size_t {
    return static_cast<std::size_t>(round_half_away(static_cast<double>(rows) * fraction));
}

void check_fraction(double fraction, std::string_view field) {
    if (!(fraction >= 0.0 && fraction < 1.0)) {
        throw ConfigError(fmt::format("{} must lie in [0, 1), got {}", field, fraction));
    }
}

struct Trip {
    std::int64_t timestamp = 0;
    double start_lat = 0.0;
    double start_lon = 0.0;
    double end_lat = 0.0;
    double end_lon = 0.0;
    std::int64_t speed = 0;
};

}  // namespace

void GenConfig::validate() const {
    if (num_vehicles <= 0) {
        throw ConfigError(fmt::format("num_vehicles must be positive, got {}", num_vehicles));
    }
    if (trips_per_vehicle <= 0) {
        throw ConfigError(
            fmt::format("trips_per_vehicle must be positive, got {}", trips_per_vehicle));
    }
    if (num_vehicles > kMaxGeneratedRows / trips_per_vehicle) {
        throw ConfigError(fmt::format("num_vehicles x trips_per_vehicle must not exceed {}",
                                      kMaxGeneratedRows));
    }
    if (!std::isfinite(speed_mean)) {
        throw ConfigError("speed_mean must be finite");
    }
    if (!(speed_std > 0.0) || !std::isfinite(speed_std)) {
        throw ConfigError(fmt::format("speed_std must be positive, got {}", speed_std));
    }
    if (!(lat_range.first <= lat_range.second) || lat_range.first < -90.0 ||
        lat_range.second > 90.0) {
        throw ConfigError("lat_range must be a nonempty interval within [-90, 90]");
    }
    if (!(lon_range.first <= lon_range.second) || lon_range.first < -180.0 ||
        lon_range.second > 180.0) {
        throw ConfigError("lon_range must be a nonempty interval within [-180, 180]");
    }
    if (time_end < time_start) {
        throw ConfigError("time_end must not precede time_start");
    }
    check_fraction(missing_ts_fraction, "missing_ts_fraction");
    check_fraction(outlier_fraction, "outlier_fraction");
    const auto rows = static_cast<std::size_t>(num_vehicles * trips_per_vehicle);
    if (anomaly_count(rows, missing_ts_fraction) + anomaly_count(rows, outlier_fraction) > rows) {
        throw ConfigError(
            "outlier_fraction: missing and outlier rows must not overlap but together exceed "
            "the row count");
    }
    if (!std::isfinite(outlier_speed) || outlier_speed != std::round(outlier_speed) ||
        std::fabs(outlier_speed) > 9.0e15) {
        throw ConfigError(fmt::format(
            "outlier_speed must be a whole number of mph (average_speed is an Int column), got {}",
            outlier_speed));
    }
}

auto generate(const GenConfig& config) -> Generated {
    config.validate();
    Rng rng(config.seed);

    const auto vehicles = static_cast<std::size_t>(config.num_vehicles);
    const auto trips = static_cast<std::size_t>(config.trips_per_vehicle);
    const auto rows = vehicles * trips;
    const auto t0 = config.time_start.seconds_since_epoch();
    const auto span = static_cast<std::uint64_t>(config.time_end.seconds_since_epoch() - t0);
    const int id_width = std::max(3, static_cast<int>(std::to_string(vehicles).size()));

    Column id{"vehicle_id", ColumnType::Text, {}};
    Column ts{"timestamp", ColumnType::Text, {}};
    Column start_lat{"start_latitude", ColumnType::Float, {}};
    Column start_lon{"start_longitude", ColumnType::Float, {}};
    Column end_lat{"end_latitude", ColumnType::Float, {}};
    Column end_lon{"end_longitude", ColumnType::Float, {}};
    Column speed{"average_speed", ColumnType::Int, {}};
    for (auto* column : {&id, &ts, &start_lat, &start_lon, &end_lat, &end_lon, &speed}) {
        column->values.reserve(rows);
    }

    std::vector<Trip> block(trips);
    for (std::size_t v = 1; v <= vehicles; ++v) {
        for (auto& trip : block) {
            trip.timestamp = t0 + static_cast<std::int64_t>(rng.uniform_int(0, span));
            trip.start_lat = rng.uniform(config.lat_range.first, config.lat_range.second);
            trip.start_lon = rng.uniform(config.lon_range.first, config.lon_range.second);
            trip.end_lat = rng.uniform(config.lat_range.first, config.lat_range.second);
            trip.end_lon = rng.uniform(config.lon_range.first, config.lon_range.second);
            const double drawn = rng.normal(config.speed_mean, config.speed_std);
            trip.speed =
                round_half_away(std::clamp(drawn, kMinBackgroundSpeed, kMaxBackgroundSpeed));
        }
        std::stable_sort(block.begin(), block.end(),
                         [](const Trip& a, const Trip& b) { return a.timestamp < b.timestamp; });
        const auto vehicle = fmt::format("V{:0{}d}", v, id_width);
        for (const auto& trip : block) {
            id.values.emplace_back(vehicle);
            ts.values.emplace_back(Timestamp::from_seconds(trip.timestamp).to_iso());
            start_lat.values.emplace_back(trip.start_lat);
            start_lon.values.emplace_back(trip.start_lon);
            end_lat.values.emplace_back(trip.end_lat);
            end_lon.values.emplace_back(trip.end_lon);
            speed.values.emplace_back(trip.speed);
        }
    }

    Frame frame({std::move(id), std::move(ts), std::move(start_lat), std::move(start_lon),
                 std::move(end_lat), std::move(end_lon), std::move(speed)});

    const std::uint64_t missing_seed = rng.next();
    const std::uint64_t outlier_seed = rng.next();

    auto missing = inject_missing(frame, "timestamp", config.missing_ts_fraction, missing_seed);

    std::vector<std::size_t> eligible;
    const auto& stamps = missing.frame.column("timestamp").values;
    for (std::size_t row = 0; row < stamps.size(); ++row) {
        if (!is_missing(stamps[row])) {
            eligible.push_back(row);
        }
    }
    const Value outlier_value{static_cast<std::int64_t>(config.outlier_speed)};
    auto outliers = inject_outliers(missing.frame, "average_speed", config.outlier_fraction,
                                    outlier_value, outlier_seed, eligible);

    return Generated{std::move(outliers.frame),
                     Manifest{config.seed, std::move(missing.rows), std::move(outliers.rows)}};
}

auto manifest_json(const GenConfig& config, const Manifest& manifest) -> nlohmann::json {
    return nlohmann::json{
        {"seed", manifest.seed},
        {"missing_rows", manifest.missing_rows},
        {"outlier_rows", manifest.outlier_rows},
        {"config",
         {
             {"num_vehicles", config.num_vehicles},
             {"trips_per_vehicle", config.trips_per_vehicle},
             {"seed", config.seed},
             {"speed_mean", config.speed_mean},
             {"speed_std", config.speed_std},
             {"lat_range", {config.lat_range.first, config.lat_range.second}},
             {"lon_range", {config.lon_range.first, config.lon_range.second}},
             {"time_start", config.time_start.to_iso()},
             {"time_end", config.time_end.to_iso()},
             {"missing_ts_fraction", config.missing_ts_fraction},
             {"outlier_fraction", config.outlier_fraction},
             {"outlier_speed", config.outlier_speed},
         }},
    };
}

auto inject_missing(const Frame& frame, std::string_view column, double fraction,
                    std::uint64_t seed) -> Injection {
    check_fraction(fraction, "fraction");
    const auto& source = frame.column(column);
    std::vector<std::size_t> present;
    for (std::size_t row = 0; row < source.values.size(); ++row) {
        if (!is_missing(source.values[row])) {
            present.push_back(row);
        }
    }
    const auto count = anomaly_count(frame.row_count(), fraction);
    if (count > present.size()) {
        throw Error(fmt::format("column '{}' has only {} present values, cannot blank {}", column,
                                present.size(), count));
    }
    Rng rng(seed);
    auto rows = sample_without_replacement(std::move(present), count, rng);
    Column out = source;
    for (const auto row : rows) {
        out.values[row] = Missing{};
    }
    return Injection{frame.with_replaced(std::move(out)), std::move(rows)};
}

auto inject_outliers(const Frame& frame, std::string_view column, double fraction,
                     const Value& value, std::uint64_t seed,
                     const std::optional<std::vector<std::size_t>>& eligible) -> Injection {
    check_fraction(fraction, "fraction");
    const auto& source = require_numeric(frame, column);
    const auto value_type = type_of(value);
    if (!value_type || *value_type != source.type) {
        throw Error(fmt::format("outlier value '{}' does not match column '{}' of type {}",
                                format_value(value), column, to_string(source.type)));
    }
    std::vector<std::size_t> candidates;
    if (eligible) {
        candidates = *eligible;
        for (const auto row : candidates) {
            if (row >= frame.row_count()) {
                throw Error(fmt::format("eligible row {} out of range for {} rows", row,
                                        frame.row_count()));
            }
        }
    } else {
        candidates.resize(frame.row_count());
        std::iota(candidates.begin(), candidates.end(), std::size_t{0});
    }
    const auto count = anomaly_count(frame.row_count(), fraction);
    if (count > candidates.size()) {
        throw Error(fmt::format("only {} eligible rows, cannot inject {} outliers",
                                candidates.size(), count));
    }
    Rng rng(seed);
    auto rows = sample_without_replacement(std::move(candidates), count, rng);
    Column out = source;
    for (const auto row : rows) {
        out.values[row] = value;
    }
    return Injection{frame.with_replaced(std::move(out)), std::move(rows)};
}

}  // namespace tripeda
