#pragma once

#include <tripeda/frame.hpp>

#include <string_view>

namespace tripeda {

/// Mean Earth radius, 6371.0088 km expressed in statute miles.
inline constexpr double kEarthRadiusMiles = 3958.7613;

inline constexpr std::string_view kDayOfWeekColumn = "day_of_week";
inline constexpr std::string_view kVehicleAvgSpeedColumn = "avg_speed_across_trips";
inline constexpr std::string_view kTripDistanceColumn = "total_trip_distance_miles";

struct GeoPoint {
    double latitude = 0.0;   // degrees, [-90, 90]
    double longitude = 0.0;  // degrees, [-180, 180]

    /// Throws when either coordinate is out of range or not finite.
    static auto checked(double latitude, double longitude) -> GeoPoint;
};

/// English weekday name, "Monday" through "Sunday".
auto day_of_week(const Timestamp& ts) -> std::string_view;

/// Great-circle distance by the haversine formula (asin form, radicand
/// clamped to [0, 1]).
auto haversine_miles(const GeoPoint& a, const GeoPoint& b) -> double;

auto add_day_of_week(const Frame& frame, std::string_view ts_column) -> Frame;

/// Every row gets the mean speed of all rows sharing its vehicle id.
auto add_vehicle_avg_speed(const Frame& frame, std::string_view id_column,
                           std::string_view speed_column) -> Frame;

/// Straight-line start-to-end distance from the four coordinate columns.
auto add_trip_distance(const Frame& frame) -> Frame;

}  // namespace tripeda
