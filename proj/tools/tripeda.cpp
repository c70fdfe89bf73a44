#include <tripeda/csv.hpp>
#include <tripeda/datagen.hpp>
#include <tripeda/session.hpp>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCommand = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

auto default_seed() -> std::uint64_t {
    const char* env = std::getenv("TRIPEDA_SEED");
    if (env == nullptr || *env == '\0') {
        return tripeda::GenConfig{}.seed;
    }
    const auto parsed = tripeda::parse_int(env);
    if (!parsed || *parsed < 0) {
        throw UsageError(fmt::format("TRIPEDA_SEED must be a non-negative integer, got '{}'", env));
    }
    return static_cast<std::uint64_t>(*parsed);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text) || !out.flush()) {
        throw tripeda::Error(fmt::format("cannot write {}", path));
    }
}

void write_outlier_json(const tripeda::Session& session, const std::string& path) {
    if (path.empty()) {
        return;
    }
    if (!session.last_outliers) {
        throw tripeda::Error("--report given but no outlier detection ran");
    }
    write_text(path, session.last_outliers->to_json().dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Telematics trip analysis workbench"};
    app.require_subcommand(1);

    tripeda::GenConfig gen;
    std::optional<std::uint64_t> gen_seed;
    std::string gen_out = "telematics";
    auto* generate = app.add_subcommand("generate", "Write a synthetic trip CSV and its manifest");
    generate->add_option("--vehicles", gen.num_vehicles, "Number of vehicles")
        ->capture_default_str();
    generate->add_option("--trips", gen.trips_per_vehicle, "Trips per vehicle")
        ->capture_default_str();
    generate->add_option("--seed", gen_seed, "PRNG seed (default: $TRIPEDA_SEED or 42)");
    generate->add_option("--missing", gen.missing_ts_fraction, "Fraction of missing timestamps")
        ->capture_default_str();
    generate->add_option("--outliers", gen.outlier_fraction, "Fraction of speed outliers")
        ->capture_default_str();
    generate->add_option("--out", gen_out, "Output prefix; writes <prefix>.csv and "
                                           "<prefix>.manifest.json")
        ->capture_default_str();

    std::string script_path;
    bool keep_going = false;
    std::string run_report;
    auto* run = app.add_subcommand("run", "Execute a script of statements");
    run->add_option("script", script_path, "Script file")->required();
    run->add_flag("--keep-going", keep_going, "Continue after a failing statement");
    run->add_option("--report", run_report, "Write the last outlier report as JSON");

    auto* repl = app.add_subcommand("repl", "Read statements from standard input");

    std::string statement;
    std::string exec_in;
    std::string exec_out;
    std::string exec_report;
    auto* exec = app.add_subcommand("exec", "Execute one statement");
    exec->add_option("statement", statement, "Statement text")->required();
    exec->add_option("--in", exec_in, "CSV to load first");
    exec->add_option("--out", exec_out, "Write the resulting dataset as CSV");
    exec->add_option("--report", exec_report, "Write the last outlier report as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        tripeda::ExecOptions options;
        options.default_seed = default_seed();

        if (*generate) {
            gen.seed = gen_seed.value_or(options.default_seed);
            const auto result = tripeda::generate(gen);
            tripeda::write_csv_file(result.frame, gen_out + ".csv");
            write_text(gen_out + ".manifest.json",
                       tripeda::manifest_json(gen, result.manifest).dump(2) + "\n");
            fmt::print("wrote {}.csv ({} rows) and {}.manifest.json\n", gen_out,
                       result.frame.row_count(), gen_out);
            return kExitOk;
        }

        if (*run) {
            std::ifstream in(script_path);
            if (!in) {
                throw UsageError(fmt::format("cannot read script {}", script_path));
            }
            std::vector<std::string> lines;
            for (std::string line; std::getline(in, line);) {
                lines.push_back(line);
            }
            const auto result =
                tripeda::run_script(lines, tripeda::Session{}, {options, keep_going});
            fmt::print("{}", result.transcript);
            write_outlier_json(result.session, run_report);
            return result.failures == 0 ? kExitOk : kExitCommand;
        }

        if (*repl) {
            const bool interactive = isatty(STDIN_FILENO) != 0;
            tripeda::Session session;
            int status = kExitOk;
            for (;;) {
                if (interactive) {
                    fmt::print("tripeda> ");
                    std::fflush(stdout);
                }
                std::string line;
                if (!std::getline(std::cin, line) || line == "quit" || line == "exit") {
                    break;
                }
                if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') {
                    continue;
                }
                try {
                    auto step = tripeda::execute_line(line, session, options);
                    session = std::move(step.session);
                    fmt::print("{}\n", step.output);
                } catch (const tripeda::CommandError& e) {
                    fmt::print(stderr, "error: {}\n", e.what());
                    status = kExitCommand;
                }
                std::fflush(stdout);
            }
            return status;
        }

        tripeda::Session session;
        if (!exec_in.empty()) {
            session.current = tripeda::read_csv_file(exec_in);
        }
        auto step = tripeda::execute_line(statement, session, options);
        fmt::print("{}\n", step.output);
        if (!exec_out.empty()) {
            if (!step.session.current) {
                throw tripeda::Error("--out given but no dataset is loaded");
            }
            tripeda::write_csv_file(*step.session.current, exec_out);
        }
        write_outlier_json(step.session, exec_report);
        return kExitOk;
    } catch (const UsageError& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kExitCommand;
    }
}
