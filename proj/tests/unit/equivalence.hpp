#pragma once

// Library-versus-oracle comparison on random small frames, shared by the unit
// tests and the acceptance run.

#include "oracles.hpp"

#include <tripeda/cleaning.hpp>
#include <tripeda/eda.hpp>

#include <fmt/format.h>

#include <random>
#include <string>

namespace oracle {

// Columns: g (Text key), i (Int), f (Float, dyadic), h (Float, dyadic).
// Values are small integers or multiples of 1/8 so sums are exact in double.
inline auto random_frame(std::mt19937_64& gen) -> tripeda::Frame {
    using namespace tripeda;
    std::uniform_int_distribution<std::size_t> size(4, 200);
    std::uniform_int_distribution<int> small(-1000, 1000);
    std::uniform_int_distribution<int> eighths(-8000, 8000);
    std::uniform_int_distribution<int> key(0, 4);
    std::uniform_int_distribution<int> hole(0, 11);
    const auto n = size(gen);
    Column g{"g", ColumnType::Text, {}};
    Column i{"i", ColumnType::Int, {}};
    Column f{"f", ColumnType::Float, {}};
    Column h{"h", ColumnType::Float, {}};
    for (std::size_t r = 0; r < n; ++r) {
        // The first two rows stay complete so every column has spread.
        const bool keep = r < 2 || hole(gen) != 0;
        g.values.push_back(keep || hole(gen) > 5 ? Value{std::string(1, static_cast<char>('A' + key(gen)))}
                                                  : Value{Missing{}});
        i.values.push_back(hole(gen) != 0 || r < 2 ? Value{std::int64_t{small(gen)}} : Value{Missing{}});
        f.values.push_back(keep ? Value{eighths(gen) / 8.0} : Value{Missing{}});
        h.values.push_back(hole(gen) != 0 || r < 2 ? Value{eighths(gen) / 8.0} : Value{Missing{}});
    }
    // Guarantee nonzero variance in the first two rows.
    i.values[0] = std::int64_t{-1001};
    i.values[1] = std::int64_t{1001};
    f.values[0] = -1000.5;
    f.values[1] = 1000.5;
    h.values[0] = 1000.25;
    h.values[1] = -1000.25;
    return Frame({g, i, f, h});
}

inline auto keys_of(const tripeda::Column& c) -> std::vector<std::optional<std::string>> {
    std::vector<std::optional<std::string>> out;
    for (const auto& v : c.values) {
        out.push_back(tripeda::is_missing(v) ? std::nullopt
                                             : std::optional<std::string>(tripeda::format_value(v)));
    }
    return out;
}

inline auto numbers_of(const tripeda::Column& c) -> std::vector<std::optional<double>> {
    std::vector<std::optional<double>> out;
    for (const auto& v : c.values) {
        out.push_back(tripeda::as_double(v));
    }
    return out;
}

/// Empty when the library agrees with the oracles to `rel`; otherwise a
/// description of the first disagreement.
inline auto compare_with_oracles(const tripeda::Frame& frame, std::mt19937_64& gen, double rel)
    -> std::string {
    using namespace tripeda;
    auto mismatch = [](std::string_view what, double got, double want) {
        return fmt::format("{}: library {:.17g}, oracle {:.17g}", what, got, want);
    };

    const auto table = describe(frame);
    for (const auto& s : table.columns) {
        const auto xs = present(frame.column(s.name));
        if (s.count != xs.size()) {
            return fmt::format("describe {} count {} vs {}", s.name, s.count, xs.size());
        }
        const std::pair<const char*, std::pair<double, double>> checks[] = {
            {"mean", {*s.mean, mean(xs)}},
            {"std", {*s.std, sample_std(xs)}},
            {"min", {*s.min, percentile(xs, 0)}},
            {"p25", {*s.p25, percentile(xs, 25)}},
            {"p50", {*s.p50, percentile(xs, 50)}},
            {"p75", {*s.p75, percentile(xs, 75)}},
            {"max", {*s.max, percentile(xs, 100)}},
        };
        for (const auto& [label, pair] : checks) {
            if (!close(pair.first, pair.second, rel)) {
                return mismatch(fmt::format("describe {} {}", s.name, label), pair.first, pair.second);
            }
        }
        if (!(*s.min <= *s.p25 && *s.p25 <= *s.p50 && *s.p50 <= *s.p75 && *s.p75 <= *s.max)) {
            return fmt::format("describe {} ordering chain broken", s.name);
        }
        std::uniform_real_distribution<double> pdist(0.0, 100.0);
        for (int k = 0; k < 5; ++k) {
            const double p = k == 0 ? 100.0 * static_cast<double>(gen() % 101) / 100.0 : pdist(gen);
            const double got = tripeda::percentile(xs, p);
            const double want = percentile(xs, p);
            if (!close(got, want, rel)) {
                return mismatch(fmt::format("percentile {} p={}", s.name, p), got, want);
            }
        }

        const auto box_got = boxplot_stats(frame, s.name);
        const auto box_want = box(frame.column(s.name));
        if (!close(box_got.q1, box_want.q1, rel) || !close(box_got.q3, box_want.q3, rel) ||
            !close(box_got.median, box_want.median, rel) ||
            box_got.whisker_low != box_want.whisker_low ||
            box_got.whisker_high != box_want.whisker_high ||
            box_got.outlier_indices != box_want.outliers) {
            return fmt::format("boxplot_stats {} disagrees", s.name);
        }
    }

    for (const char* target : {"i", "f"}) {
        const auto got = group_mean(frame, "g", target);
        const auto want = group_means(keys_of(frame.column("g")), numbers_of(frame.column(target)));
        if (got.groups.size() != want.size()) {
            return fmt::format("group_mean {} group count {} vs {}", target, got.groups.size(),
                               want.size());
        }
        for (std::size_t k = 0; k < want.size(); ++k) {
            if (got.groups[k].key != want[k].key || got.groups[k].count != want[k].count ||
                !close(got.groups[k].mean, want[k].mean, rel)) {
                return mismatch(fmt::format("group_mean {} key {}", target, want[k].key),
                                got.groups[k].mean, want[k].mean);
            }
        }
    }

    const std::vector<std::string> names{"i", "f", "h"};
    const auto matrix = correlation_matrix(frame, names);
    for (std::size_t a = 0; a < names.size(); ++a) {
        for (std::size_t b = 0; b < names.size(); ++b) {
            std::vector<double> xs;
            std::vector<double> ys;
            const auto& ca = frame.column(names[a]).values;
            const auto& cb = frame.column(names[b]).values;
            for (std::size_t r = 0; r < frame.row_count(); ++r) {
                const auto x = as_double(ca[r]);
                const auto y = as_double(cb[r]);
                if (x && y) {
                    xs.push_back(*x);
                    ys.push_back(*y);
                }
            }
            const double want = a == b ? 1.0 : pearson(xs, ys);
            if (!close(matrix.at(a, b), want, rel)) {
                return mismatch(fmt::format("correlation {}x{}", names[a], names[b]),
                                matrix.at(a, b), want);
            }
        }
    }
    return {};
}

}  // namespace oracle
