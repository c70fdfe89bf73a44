#include "oracles.hpp"

#include <tripeda/csv.hpp>
#include <tripeda/datagen.hpp>
#include <tripeda/error.hpp>
#include <tripeda/features.hpp>

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace tripeda;

namespace {

// Zeller's congruence, Gregorian calendar.
auto zeller(int year, int month, int day) -> std::string {
    if (month < 3) {
        month += 12;
        year -= 1;
    }
    const int k = year % 100;
    const int j = year / 100;
    const int h = (day + 13 * (month + 1) / 5 + k + k / 4 + j / 4 + 5 * j) % 7;
    static const char* names[] = {"Saturday", "Sunday",   "Monday", "Tuesday",
                                  "Wednesday", "Thursday", "Friday"};
    return names[h];
}

}  // namespace

TEST_SUITE("features") {

TEST_CASE("day_of_week") {
    CHECK(day_of_week(Timestamp::from_civil(2023, 1, 5)) == "Thursday");
    CHECK(day_of_week(Timestamp::from_civil(2000, 1, 1)) == "Saturday");
    CHECK(day_of_week(Timestamp::from_civil(2023, 1, 2, 23, 59, 59)) == "Monday");
    std::mt19937_64 gen(21);
    std::uniform_int_distribution<int> y(1601, 2399);
    std::uniform_int_distribution<int> m(1, 12);
    std::uniform_int_distribution<int> d(1, 28);
    for (int i = 0; i < 2000; ++i) {
        const int yy = y(gen);
        const int mm = m(gen);
        const int dd = d(gen);
        const auto ts = Timestamp::from_civil(yy, static_cast<unsigned>(mm), static_cast<unsigned>(dd), 12);
        REQUIRE(day_of_week(ts) == zeller(yy, mm, dd));
        REQUIRE(day_of_week(Timestamp::from_seconds(ts.seconds_since_epoch() + 7 * 86400)) ==
                day_of_week(ts));
    }
}

TEST_CASE("add_day_of_week requires converted timestamps") {
    const auto raw = read_csv("timestamp,x\n\"2023-01-05T10:00:00\",1\n,2\n");
    CHECK(raw.column("timestamp").type == ColumnType::Text);
    try {
        (void)add_day_of_week(raw, "timestamp");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("convert") != std::string::npos);
    }
    const auto f = add_day_of_week(read_csv("timestamp,x\n2023-01-05T10:00:00,1\n,2\n"), "timestamp");
    CHECK(f.column(kDayOfWeekColumn).values[0] == Value{std::string("Thursday")});
    CHECK(is_missing(f.column(kDayOfWeekColumn).values[1]));
    CHECK_THROWS_AS(add_day_of_week(f, "timestamp"), Error);  // already present
}

TEST_CASE("haversine closed forms and symmetry") {
    const auto a = GeoPoint::checked(33.5, -118.0);
    CHECK(haversine_miles(a, a) == 0.0);
    const double R = kEarthRadiusMiles;
    const double equatorial = haversine_miles(GeoPoint::checked(0, 0), GeoPoint::checked(0, 1));
    CHECK(std::abs(equatorial - R * std::numbers::pi / 180) <= 1e-6 * equatorial);
    // The quoted 69.0933 is a rounded figure; only the closed form is exact.
    CHECK(std::abs(equatorial - 69.0933) < 2e-4);
    const double antipodal = haversine_miles(GeoPoint::checked(10, 20), GeoPoint::checked(-10, -160));
    CHECK(std::abs(antipodal - std::numbers::pi * R) <= 1e-6 * antipodal);

    std::mt19937_64 gen(31);
    std::uniform_real_distribution<double> lat(-90, 90);
    std::uniform_real_distribution<double> lon(-180, 180);
    for (int i = 0; i < 5000; ++i) {
        const auto p = GeoPoint::checked(lat(gen), lon(gen));
        const auto q = GeoPoint::checked(lat(gen), lon(gen));
        const double d1 = haversine_miles(p, q);
        const double d2 = haversine_miles(q, p);
        REQUIRE(d1 >= 0.0);
        REQUIRE(std::abs(d1 - d2) <= 1e-12 * std::max(1.0, d1));
        REQUIRE(d1 <= std::numbers::pi * R * (1 + 1e-12));
        REQUIRE(haversine_miles(p, p) == 0.0);
    }
    for (const double latitude : {0.0, 33.0, -60.0}) {
        double previous = 0.0;
        for (int step = 1; step <= 180; ++step) {
            const double d = haversine_miles(GeoPoint::checked(latitude, 0),
                                             GeoPoint::checked(latitude, step));
            REQUIRE(d > previous);
            previous = d;
        }
    }
    CHECK_THROWS_AS(GeoPoint::checked(91, 0), Error);
    CHECK_THROWS_AS(GeoPoint::checked(0, -180.5), Error);
    CHECK_THROWS_AS(GeoPoint::checked(std::nan(""), 0), Error);
}

TEST_CASE("add_trip_distance") {
    const auto g = generate(GenConfig{}).frame;
    const auto f = add_trip_distance(g);
    const double diag = haversine_miles(GeoPoint::checked(33, -118.5), GeoPoint::checked(34, -117.5));
    const auto& d = f.column(kTripDistanceColumn);
    CHECK(d.type == ColumnType::Float);
    for (std::size_t row = 0; row < f.row_count(); ++row) {
        const auto get = [&](std::string_view c) { return std::get<double>(f.column(c).values[row]); };
        const double expected =
            haversine_miles(GeoPoint::checked(get("start_latitude"), get("start_longitude")),
                            GeoPoint::checked(get("end_latitude"), get("end_longitude")));
        REQUIRE(std::get<double>(d.values[row]) == expected);
        REQUIRE(expected >= 0.0);
        REQUIRE(expected <= diag);
    }
    for (const auto& c : g.columns()) {
        CHECK(f.column(c.name) == c);
    }
    const auto same = read_csv(
        "start_latitude,start_longitude,end_latitude,end_longitude\n1.5,2.5,1.5,2.5\n,1,1,1\n");
    const auto z = add_trip_distance(same);
    CHECK(z.column(kTripDistanceColumn).values[0] == Value{0.0});
    CHECK(is_missing(z.column(kTripDistanceColumn).values[1]));
    try {
        (void)add_trip_distance(read_csv("start_latitude,end_latitude\n1,2\n"));
        FAIL("expected an error");
    } catch (const Error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("start_longitude") != std::string::npos);
        CHECK(msg.find("end_longitude") != std::string::npos);
    }
    CHECK_THROWS_AS(add_trip_distance(f), Error);
}

TEST_CASE("add_vehicle_avg_speed") {
    const auto f = add_vehicle_avg_speed(
        read_csv("id,s\nV1,30\nV2,70\nV1,50\nV3,\nV4,20\n"), "id", "s");
    const auto& a = f.column(kVehicleAvgSpeedColumn);
    CHECK(a.type == ColumnType::Float);
    CHECK(a.values[0] == Value{40.0});
    CHECK(a.values[2] == Value{40.0});
    CHECK(a.values[1] == Value{70.0});
    CHECK(is_missing(a.values[3]));
    CHECK(a.values[4] == Value{20.0});
    CHECK_THROWS_AS(add_vehicle_avg_speed(f, "id", "s"), Error);
    CHECK_THROWS_AS(add_vehicle_avg_speed(read_csv("id,s\nV1,x\n"), "id", "s"), Error);

    std::mt19937_64 gen(17);
    std::uniform_int_distribution<int> vid(1, 3);
    std::uniform_int_distribution<int> speed(5, 90);
    for (int trial = 0; trial < 100; ++trial) {
        Column ids{"id", ColumnType::Text, {}};
        Column speeds{"s", ColumnType::Int, {}};
        std::vector<std::optional<std::string>> keys;
        std::vector<std::optional<double>> values;
        for (int r = 0; r < 30; ++r) {
            const auto k = "V" + std::to_string(vid(gen));
            const auto s = speed(gen);
            ids.values.emplace_back(k);
            speeds.values.emplace_back(std::int64_t{s});
            keys.emplace_back(k);
            values.emplace_back(s);
        }
        const auto out = add_vehicle_avg_speed(Frame({ids, speeds}), "id", "s");
        const auto groups = oracle::group_means(keys, values);
        for (std::size_t r = 0; r < 30; ++r) {
            const auto it = std::find_if(groups.begin(), groups.end(),
                                         [&](const auto& g) { return g.key == *keys[r]; });
            REQUIRE(oracle::close(std::get<double>(out.column(kVehicleAvgSpeedColumn).values[r]),
                                  it->mean, 1e-12));
        }
    }
}

}
