#include <tripeda/eda.hpp>
#include <tripeda/error.hpp>

#include <fmt/core.h>

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace tripeda {

auto percentile_sorted(std::span<const double> sorted, double p) -> double {
    if (sorted.empty()) {
        throw Error("percentile of an empty sequence");
    }
    if (!(p >= 0.0 && p <= 100.0)) {
        throw Error(fmt::format("percentile rank {} outside [0, 100]", p));
    }
    const double h = static_cast<double>(sorted.size() - 1) * p / 100.0;
    const auto lower = static_cast<std::size_t>(std::floor(h));
    if (lower + 1 >= sorted.size()) {
        return sorted.back();
    }
    const double frac = h - static_cast<double>(lower);
    return sorted[lower] + frac * (sorted[lower + 1] - sorted[lower]);
}

auto percentile(std::span<const double> values, double p) -> double {
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    return percentile_sorted(sorted, p);
}

namespace {

auto summarize(const Column& column) -> ColumnSummary {
    ColumnSummary out;
    out.name = column.name;
    auto values = numeric_view(column).values;
    out.count = values.size();
    if (values.empty()) {
        return out;
    }
    double sum = 0.0;
    for (const double v : values) {
        sum += v;
    }
    const double mean = sum / static_cast<double>(values.size());
    out.mean = mean;
    if (values.size() >= 2) {
        double ss = 0.0;
        for (const double v : values) {
            ss += (v - mean) * (v - mean);
        }
        out.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    std::sort(values.begin(), values.end());
    out.min = values.front();
    out.p25 = percentile_sorted(values, 25.0);
    out.p50 = percentile_sorted(values, 50.0);
    out.p75 = percentile_sorted(values, 75.0);
    out.max = values.back();
    return out;
}

struct StatRow {
    std::string_view label;
    std::optional<double> ColumnSummary::*field;
};

constexpr std::array<StatRow, 7> kStatRows{{
    {"mean", &ColumnSummary::mean},
    {"std", &ColumnSummary::std},
    {"min", &ColumnSummary::min},
    {"25%", &ColumnSummary::p25},
    {"50%", &ColumnSummary::p50},
    {"75%", &ColumnSummary::p75},
    {"max", &ColumnSummary::max},
}};

}  // namespace

auto SummaryTable::to_text() const -> std::string {
    std::vector<std::vector<std::string>> cells;
    std::vector<std::string> header{""};
    for (const auto& c : columns) {
        header.push_back(c.name);
    }
    cells.push_back(header);
    std::vector<std::string> count_row{"count"};
    for (const auto& c : columns) {
        count_row.push_back(fmt::format("{:.6f}", static_cast<double>(c.count)));
    }
    cells.push_back(count_row);
    for (const auto& stat : kStatRows) {
        std::vector<std::string> row{std::string(stat.label)};
        for (const auto& c : columns) {
            const auto& v = c.*stat.field;
            row.push_back(v ? fmt::format("{:.6f}", *v) : "NaN");
        }
        cells.push_back(row);
    }
    std::vector<std::size_t> widths(header.size(), 0);
    for (const auto& row : cells) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            widths[i] = std::max(widths[i], row[i].size());
        }
    }
    std::string out;
    for (const auto& row : cells) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i == 0) {
                out += fmt::format("{:<{}}", row[i], widths[i]);
            } else {
                out += fmt::format("  {:>{}}", row[i], widths[i]);
            }
        }
        out += '\n';
    }
    return out;
}

auto SummaryTable::to_csv() const -> std::string {
    std::string out = "statistic";
    for (const auto& c : columns) {
        out += ',' + c.name;
    }
    out += "\ncount";
    for (const auto& c : columns) {
        out += ',' + std::to_string(c.count);
    }
    out += '\n';
    for (const auto& stat : kStatRows) {
        out += stat.label;
        for (const auto& c : columns) {
            const auto& v = c.*stat.field;
            out += ',' + (v ? format_double(*v) : std::string());
        }
        out += '\n';
    }
    return out;
}

auto describe(const Frame& frame) -> SummaryTable {
    SummaryTable table;
    for (const auto& column : frame.columns()) {
        if (column.type == ColumnType::Int || column.type == ColumnType::Float) {
            table.columns.push_back(summarize(column));
        }
    }
    if (table.columns.empty()) {
        throw Error("describe needs at least one numeric column");
    }
    return table;
}

auto to_string(TimeSegment segment) -> std::string_view {
    switch (segment) {
        case TimeSegment::MidnightToMorning: return "MidnightToMorning";
        case TimeSegment::MorningToNoon: return "MorningToNoon";
        case TimeSegment::NoonToEvening: return "NoonToEvening";
        case TimeSegment::EveningToMidnight: return "EveningToMidnight";
    }
    return "?";
}

auto classify_time_of_day(const Timestamp& ts) -> TimeSegment {
    return kTimeSegments[ts.hour() / 6];
}

auto segment_time_of_day(const Frame& frame, std::string_view ts_column) -> Frame {
    const auto& source = frame.column(ts_column);
    if (source.type != ColumnType::Timestamp) {
        throw Error(fmt::format("column '{}' is {}, not Timestamp; convert it first (convert {} to "
                                "datetime)",
                                ts_column, to_string(source.type), ts_column));
    }
    Column out{"time_of_day", ColumnType::Text, {}};
    out.values.reserve(source.values.size());
    for (const auto& value : source.values) {
        if (const auto* ts = std::get_if<Timestamp>(&value)) {
            out.values.emplace_back(std::string(to_string(classify_time_of_day(*ts))));
        } else {
            out.values.emplace_back(Missing{});
        }
    }
    return frame.with_column(std::move(out));
}

auto group_mean(const Frame& frame, std::string_view by, std::string_view target)
    -> GroupedStats {
    const auto& keys = frame.column(by);
    const auto& values = require_numeric(frame, target);
    GroupedStats out{std::string(by), std::string(target), {}};
    std::vector<double> sums;
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t row = 0; row < frame.row_count(); ++row) {
        const auto v = as_double(values.values[row]);
        if (is_missing(keys.values[row]) || !v) {
            continue;
        }
        auto key = format_value(keys.values[row]);
        auto [it, inserted] = index.try_emplace(key, out.groups.size());
        if (inserted) {
            out.groups.push_back(Group{std::move(key), 0, 0.0});
            sums.push_back(0.0);
        }
        out.groups[it->second].count += 1;
        sums[it->second] += *v;
    }
    for (std::size_t g = 0; g < out.groups.size(); ++g) {
        out.groups[g].mean = sums[g] / static_cast<double>(out.groups[g].count);
    }
    return out;
}

auto in_segment_order(const GroupedStats& stats) -> GroupedStats {
    auto rank = [](const std::string& key) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < kTimeSegments.size(); ++i) {
            if (key == to_string(kTimeSegments[i])) {
                return i;
            }
        }
        return std::nullopt;
    };
    if (!std::all_of(stats.groups.begin(), stats.groups.end(),
                     [&](const Group& g) { return rank(g.key).has_value(); })) {
        return stats;
    }
    GroupedStats out = stats;
    std::stable_sort(out.groups.begin(), out.groups.end(),
                     [&](const Group& a, const Group& b) { return *rank(a.key) < *rank(b.key); });
    return out;
}

auto CorrelationMatrix::to_text() const -> std::string {
    std::size_t width = 6;
    for (const auto& label : labels) {
        width = std::max(width, label.size());
    }
    std::string out = fmt::format("{:<{}}", "", width);
    for (const auto& label : labels) {
        out += fmt::format("  {:>{}}", label, width);
    }
    out += '\n';
    for (std::size_t i = 0; i < size(); ++i) {
        out += fmt::format("{:<{}}", labels[i], width);
        for (std::size_t j = 0; j < size(); ++j) {
            out += fmt::format("  {:>{}.4f}", at(i, j), width);
        }
        out += '\n';
    }
    return out;
}

auto correlation_matrix(const Frame& frame, std::span<const std::string> columns)
    -> CorrelationMatrix {
    if (columns.size() < 2) {
        throw Error("correlation needs at least two columns");
    }
    std::vector<const Column*> cols;
    for (const auto& name : columns) {
        cols.push_back(&require_numeric(frame, name));
    }
    const auto n = columns.size();
    CorrelationMatrix out{{columns.begin(), columns.end()}, std::vector<double>(n * n, 0.0)};

    auto zero_variance = [](const std::string& name) {
        return Error(fmt::format("column '{}' has zero variance; correlation is undefined", name));
    };

    for (std::size_t i = 0; i < n; ++i) {
        const auto own = numeric_view(*cols[i]).values;
        if (own.size() < 2 || std::all_of(own.begin(), own.end(),
                                          [&](double v) { return v == own.front(); })) {
            throw zero_variance(columns[i]);
        }
        out.values[i * n + i] = 1.0;
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            std::vector<double> xs;
            std::vector<double> ys;
            for (std::size_t row = 0; row < frame.row_count(); ++row) {
                const auto x = as_double(cols[i]->values[row]);
                const auto y = as_double(cols[j]->values[row]);
                if (x && y) {
                    xs.push_back(*x);
                    ys.push_back(*y);
                }
            }
            double sx = 0.0;
            double sy = 0.0;
            for (std::size_t k = 0; k < xs.size(); ++k) {
                sx += xs[k];
                sy += ys[k];
            }
            const double count = static_cast<double>(xs.size());
            const double mx = sx / count;
            const double my = sy / count;
            double sxx = 0.0;
            double syy = 0.0;
            double sxy = 0.0;
            for (std::size_t k = 0; k < xs.size(); ++k) {
                const double dx = xs[k] - mx;
                const double dy = ys[k] - my;
                sxx += dx * dx;
                syy += dy * dy;
                sxy += dx * dy;
            }
            if (xs.empty() || !(sxx > 0.0)) {
                throw zero_variance(columns[i]);
            }
            if (!(syy > 0.0)) {
                throw zero_variance(columns[j]);
            }
            const double r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
            out.values[i * n + j] = r;
            out.values[j * n + i] = r;
        }
    }
    return out;
}

}  // namespace tripeda
