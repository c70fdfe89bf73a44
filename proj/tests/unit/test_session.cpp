#include <tripeda/csv.hpp>
#include <tripeda/session.hpp>

#include <doctest.h>

#include <filesystem>

using namespace tripeda;
namespace fs = std::filesystem;

namespace {

auto temp_dir(const std::string& name) -> fs::path {
    const fs::path dir = fs::path(TRIPEDA_TEST_TMP) / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

auto run(const Session& s, std::string_view line, const ExecOptions& options = {}) -> ExecResult {
    return execute_line(line, s, options);
}

auto contains(const std::string& text, std::string_view needle) -> bool {
    return text.find(needle) != std::string::npos;
}

}  // namespace

TEST_SUITE("session") {

TEST_CASE("count missing after default generate reports 25 timestamps") {
    auto s = run(Session{}, "generate 50 vehicles 10 trips").session;
    REQUIRE(s.current);
    CHECK(s.current->row_count() == 500);
    REQUIRE(s.manifest);
    const auto out = run(s, "count missing").output;
    CHECK(contains(out, "timestamp: 25"));
    const auto dropped = run(s, "drop rows where timestamp is missing").session;
    CHECK(dropped.current->row_count() == 475);
}

TEST_CASE("statements needing data fail instructively without one") {
    const Session empty;
    for (const char* line : {"show summary", "count missing", "filter outliers", "segment by time of day",
                             "add day of week", "correlate a, b"}) {
        CAPTURE(line);
        try {
            run(empty, line);
            FAIL("expected a command error");
        } catch (const CommandError& e) {
            CHECK(contains(e.what(), "no dataset loaded"));
            CHECK(std::string_view(e.what()).starts_with(line));
        }
    }
}

TEST_CASE("syntax errors surface as command errors") {
    CHECK_THROWS_AS(run(Session{}, "frobnicate data"), CommandError);
}

TEST_CASE("failures leave the session untouched") {
    const auto s = run(Session{}, "generate 20 vehicles 3 trips seed 9").session;
    const auto before = write_csv(*s.current);
    const auto log_size = s.log.size();
    for (const char* line : {"impute nope with mean", "convert vehicle_id to int",
                             "detect outliers in vehicle_id using zscore threshold 3",
                             "filter outliers", R"(test average_speed between "x" and "y" by vehicle_id)",
                             R"(load "/nonexistent/dir/file.csv")"}) {
        CAPTURE(line);
        CHECK_THROWS_AS(run(s, line), CommandError);
        CHECK(write_csv(*s.current) == before);
        CHECK(s.log.size() == log_size);
    }
}

TEST_CASE("detect stores a report that filter consumes once") {
    auto s = run(Session{}, "generate 50 vehicles 10 trips").session;
    s = run(s, "drop rows where timestamp is missing").session;
    s = run(s, "detect outliers in average_speed using zscore threshold 3").session;
    REQUIRE(s.last_outliers);
    CHECK(s.last_outliers->indices.size() == 10);
    CHECK(s.outliers_pending);
    s = run(s, "filter outliers").session;
    CHECK(s.current->row_count() == 465);
    CHECK_FALSE(s.outliers_pending);
    // A second filter would apply stale row indices.
    CHECK_THROWS_AS(run(s, "filter outliers"), CommandError);
    const auto again = run(s, "detect outliers in average_speed using iqr").session;
    CHECK(again.last_outliers->indices.empty());
}

TEST_CASE("log replay reproduces the frame") {
    const auto dir = temp_dir("replay");
    ExecOptions options;
    options.base_dir = dir;
    options.default_seed = 1234;
    const std::vector<std::string> script{
        "generate 30 vehicles 4 trips with 10% missing timestamps",
        "save \"raw.csv\"",
        "drop rows where timestamp is missing",
        "convert timestamp to datetime",
        "detect outliers in average_speed using iqr k 1.5",
        "filter outliers",
        "add day of week",
        "add trip distance",
        "add vehicle average speed",
        "segment by time of day",
        "flag missing in average_speed",
        "show summary",
    };
    const auto result = run_script(script, Session{}, {options, false});
    REQUIRE(result.failures == 0);
    REQUIRE(result.session.log.size() == script.size());
    // The seed taken from the options is written into the log.
    CHECK(contains(result.session.log[0].command, "seed 1234"));

    std::vector<std::string> replay;
    for (const auto& entry : result.session.log) {
        replay.push_back(entry.command);
    }
    ExecOptions other = options;
    other.default_seed = 1;
    const auto again = run_script(replay, Session{}, {other, false});
    REQUIRE(again.failures == 0);
    CHECK(write_csv(*again.session.current) == write_csv(*result.session.current));
    CHECK(again.session.log == result.session.log);
}

TEST_CASE("load and save resolve against the base directory") {
    const auto dir = temp_dir("load_save");
    ExecOptions options;
    options.base_dir = dir;
    auto s = run(Session{}, "generate 5 vehicles 2 trips seed 3", options).session;
    s = run(s, "save \"data.csv\"", options).session;
    CHECK(fs::exists(dir / "data.csv"));
    const auto loaded = run(Session{}, "load \"data.csv\"", options).session;
    CHECK(write_csv(*loaded.current) == write_csv(*s.current));
    CHECK_FALSE(loaded.manifest);
}

TEST_CASE("run_script: empty, stop at first error, keep going") {
    const Session start;
    const std::vector<std::string> empty;
    const auto none = run_script(empty, start);
    CHECK(none.transcript.empty());
    CHECK(none.failures == 0);
    CHECK_FALSE(none.session.current);

    const std::vector<std::string> comments{"", "# just a comment", "   "};
    CHECK(run_script(comments, start).transcript.empty());

    const std::vector<std::string> five{
        "generate 10 vehicles 2 trips seed 5",
        "count missing",
        "show mean nothing by nowhere",
        "flag missing in timestamp",
        "show summary",
    };
    const auto stopped = run_script(five, start);
    CHECK(stopped.failures == 1);
    CHECK(contains(stopped.transcript, "line 3: error: "));
    CHECK_FALSE(contains(stopped.transcript, "> flag missing"));
    CHECK(stopped.session.log.size() == 2);

    const auto continued = run_script(five, start, {{}, true});
    CHECK(continued.failures == 1);
    CHECK(contains(continued.transcript, "> show summary"));
    CHECK(continued.session.log.size() == 4);
}

TEST_CASE("t-test, correlation and group mean outputs") {
    auto s = run(Session{}, "generate 50 vehicles 10 trips").session;
    s = run(s, "drop rows where timestamp is missing").session;
    s = run(s, "convert timestamp to datetime").session;
    s = run(s, "segment by time of day").session;
    const auto grouped = run(s, "show mean average_speed by time_of_day");
    CHECK(contains(grouped.output, "MorningToNoon"));
    const auto test = run(s, R"(test average_speed between "MorningToNoon" and "EveningToMidnight" by time_of_day)");
    REQUIRE(test.session.last_ttest);
    CHECK(contains(test.output, "p-value: "));
    CHECK(test.session.last_ttest->first_key == "MorningToNoon");
    try {
        run(s, R"(test average_speed between "Dawn" and "MorningToNoon" by time_of_day)");
        FAIL("expected an unknown-group error");
    } catch (const CommandError& e) {
        CHECK(contains(e.what(), "Dawn"));
    }
    const auto corr = run(s, "correlate average_speed, start_latitude");
    CHECK(contains(corr.output, "1.0"));
}

}
