#include <tripeda/error.hpp>
#include <tripeda/features.hpp>

#include <fmt/core.h>
#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <numbers>
#include <unordered_map>

namespace tripeda {

namespace {

constexpr std::array<std::string_view, 7> kWeekdayNames{
    "Sunday", "Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday"};

constexpr std::array<std::string_view, 4> kCoordinateColumns{
    "start_latitude", "start_longitude", "end_latitude", "end_longitude"};

auto radians(double degrees) -> double { return degrees * std::numbers::pi / 180.0; }

}  // namespace

auto GeoPoint::checked(double latitude, double longitude) -> GeoPoint {
    if (!(latitude >= -90.0 && latitude <= 90.0) || !(longitude >= -180.0 && longitude <= 180.0)) {
        throw Error(fmt::format("coordinate ({}, {}) is outside latitude [-90, 90] / longitude "
                                "[-180, 180]",
                                latitude, longitude));
    }
    return GeoPoint{latitude, longitude};
}

auto day_of_week(const Timestamp& ts) -> std::string_view {
    const std::chrono::weekday wd{std::chrono::sys_days{ts.date()}};
    return kWeekdayNames[wd.c_encoding()];
}

auto haversine_miles(const GeoPoint& a, const GeoPoint& b) -> double {
    const double phi1 = radians(a.latitude);
    const double phi2 = radians(b.latitude);
    const double half_dphi = std::sin((phi2 - phi1) / 2.0);
    const double half_dlambda = std::sin(radians(b.longitude - a.longitude) / 2.0);
    const double h = std::clamp(
        half_dphi * half_dphi + std::cos(phi1) * std::cos(phi2) * half_dlambda * half_dlambda, 0.0,
        1.0);
    return 2.0 * kEarthRadiusMiles * std::asin(std::sqrt(h));
}

auto add_day_of_week(const Frame& frame, std::string_view ts_column) -> Frame {
    const auto& source = frame.column(ts_column);
    if (source.type != ColumnType::Timestamp) {
        throw Error(fmt::format(
            "column '{}' is {}, not Timestamp; convert it first (convert {} to datetime)",
            ts_column, to_string(source.type), ts_column));
    }
    Column out{std::string(kDayOfWeekColumn), ColumnType::Text, {}};
    out.values.reserve(source.values.size());
    for (const auto& value : source.values) {
        if (const auto* ts = std::get_if<Timestamp>(&value)) {
            out.values.emplace_back(std::string(day_of_week(*ts)));
        } else {
            out.values.emplace_back(Missing{});
        }
    }
    return frame.with_column(std::move(out));
}

auto add_vehicle_avg_speed(const Frame& frame, std::string_view id_column,
                           std::string_view speed_column) -> Frame {
    const auto& ids = frame.column(id_column);
    const auto& speeds = require_numeric(frame, speed_column);
    if (frame.has_column(kVehicleAvgSpeedColumn)) {
        throw Error(fmt::format("column '{}' already exists", kVehicleAvgSpeedColumn));
    }
    struct Acc {
        double sum = 0.0;
        std::size_t count = 0;
    };
    std::unordered_map<std::string, Acc> groups;
    for (std::size_t row = 0; row < frame.row_count(); ++row) {
        if (is_missing(ids.values[row])) {
            continue;
        }
        auto& acc = groups[format_value(ids.values[row])];
        if (const auto v = as_double(speeds.values[row])) {
            acc.sum += *v;
            acc.count += 1;
        }
    }
    Column out{std::string(kVehicleAvgSpeedColumn), ColumnType::Float, {}};
    out.values.reserve(frame.row_count());
    for (std::size_t row = 0; row < frame.row_count(); ++row) {
        if (is_missing(ids.values[row])) {
            out.values.emplace_back(Missing{});
            continue;
        }
        const auto& acc = groups.at(format_value(ids.values[row]));
        if (acc.count == 0) {
            out.values.emplace_back(Missing{});
        } else {
            out.values.emplace_back(acc.sum / static_cast<double>(acc.count));
        }
    }
    return frame.with_column(std::move(out));
}

auto add_trip_distance(const Frame& frame) -> Frame {
    std::vector<std::string> absent;
    for (const auto name : kCoordinateColumns) {
        if (!frame.has_column(name)) {
            absent.emplace_back(name);
        }
    }
    if (!absent.empty()) {
        throw Error(
            fmt::format("missing coordinate columns: {}", fmt::join(absent, ", ")));
    }
    std::array<const Column*, 4> coords{};
    for (std::size_t i = 0; i < kCoordinateColumns.size(); ++i) {
        coords[i] = &require_numeric(frame, kCoordinateColumns[i]);
    }
    if (frame.has_column(kTripDistanceColumn)) {
        throw Error(fmt::format("column '{}' already exists", kTripDistanceColumn));
    }
    Column out{std::string(kTripDistanceColumn), ColumnType::Float, {}};
    out.values.reserve(frame.row_count());
    for (std::size_t row = 0; row < frame.row_count(); ++row) {
        std::array<double, 4> v{};
        bool complete = true;
        for (std::size_t i = 0; i < 4; ++i) {
            const auto d = as_double(coords[i]->values[row]);
            complete = complete && d.has_value();
            v[i] = d.value_or(0.0);
        }
        if (!complete) {
            out.values.emplace_back(Missing{});
            continue;
        }
        out.values.emplace_back(
            haversine_miles(GeoPoint::checked(v[0], v[1]), GeoPoint::checked(v[2], v[3])));
    }
    return frame.with_column(std::move(out));
}

}  // namespace tripeda
