#include <tripeda/cleaning.hpp>
#include <tripeda/eda.hpp>
#include <tripeda/error.hpp>

#include <fmt/core.h>

#include <algorithm>
#include <cmath>

namespace tripeda {

auto MissingReport::count_for(std::string_view name) const -> std::size_t {
    for (const auto& entry : columns) {
        if (entry.name == name) {
            return entry.missing;
        }
    }
    throw Error(fmt::format("no missing-value entry for column '{}'", name));
}

auto MissingReport::to_text() const -> std::string {
    std::string out;
    for (const auto& entry : columns) {
        out += fmt::format("{}: {}\n", entry.name, entry.missing);
    }
    return out;
}

auto count_missing(const Frame& frame) -> MissingReport {
    MissingReport report;
    report.total_rows = frame.row_count();
    for (const auto& column : frame.columns()) {
        const auto n = std::count_if(column.values.begin(), column.values.end(),
                                     [](const Value& v) { return is_missing(v); });
        report.columns.push_back({column.name, static_cast<std::size_t>(n)});
    }
    return report;
}

auto drop_missing(const Frame& frame, std::span<const std::string> columns) -> Frame {
    std::vector<const Column*> checked;
    for (const auto& name : columns) {
        checked.push_back(&frame.column(name));
    }
    std::vector<std::size_t> keep;
    for (std::size_t row = 0; row < frame.row_count(); ++row) {
        const bool any_missing = std::any_of(checked.begin(), checked.end(), [&](const Column* c) {
            return is_missing(c->values[row]);
        });
        if (!any_missing) {
            keep.push_back(row);
        }
    }
    return frame.take_rows(keep);
}

namespace {

auto mode_of(const Column& column) -> Value {
    std::vector<std::pair<Value, std::size_t>> tally;
    for (const auto& value : column.values) {
        if (is_missing(value)) {
            continue;
        }
        auto it = std::find_if(tally.begin(), tally.end(),
                               [&](const auto& entry) { return entry.first == value; });
        if (it == tally.end()) {
            tally.emplace_back(value, 1);
        } else {
            ++it->second;
        }
    }
    auto best = tally.begin();
    for (auto it = tally.begin(); it != tally.end(); ++it) {
        if (it->second > best->second) {
            best = it;
        }
    }
    return best->first;
}

}  // namespace

auto impute(const Frame& frame, std::string_view column, ImputeStrategy strategy) -> Frame {
    const auto& source = frame.column(column);
    const auto present = std::count_if(source.values.begin(), source.values.end(),
                                       [](const Value& v) { return !is_missing(v); });
    if (present == 0) {
        throw Error(fmt::format("column '{}' has no present values to impute from", column));
    }
    Value fill;
    if (strategy == ImputeStrategy::Mode) {
        fill = mode_of(source);
    } else {
        if (source.type != ColumnType::Int && source.type != ColumnType::Float) {
            throw Error(fmt::format("cannot impute the {} of {} column '{}'",
                                    strategy == ImputeStrategy::Mean ? "mean" : "median",
                                    to_string(source.type), column));
        }
        const auto values = numeric_view(source).values;
        double stat = 0.0;
        if (strategy == ImputeStrategy::Mean) {
            for (const double v : values) {
                stat += v;
            }
            stat /= static_cast<double>(values.size());
        } else {
            stat = percentile(values, 50.0);
        }
        fill = source.type == ColumnType::Int ? Value{round_half_away(stat)} : Value{stat};
    }
    Column out = source;
    for (auto& value : out.values) {
        if (is_missing(value)) {
            value = fill;
        }
    }
    return frame.with_replaced(std::move(out));
}

auto fill_directional(const Frame& frame, std::string_view column, FillDirection direction)
    -> Frame {
    Column out = frame.column(column);
    auto propagate = [](auto first, auto last) {
        const Value* carry = nullptr;
        for (auto it = first; it != last; ++it) {
            if (is_missing(*it)) {
                if (carry != nullptr) {
                    *it = *carry;
                }
            } else {
                carry = &*it;
            }
        }
    };
    if (direction == FillDirection::Forward) {
        propagate(out.values.begin(), out.values.end());
    } else {
        propagate(out.values.rbegin(), out.values.rend());
    }
    return frame.with_replaced(std::move(out));
}

auto flag_missing(const Frame& frame, std::string_view column) -> Frame {
    const auto& source = frame.column(column);
    Column flags{std::string(column) + "_missing", ColumnType::Bool, {}};
    if (frame.has_column(flags.name)) {
        throw Error(fmt::format("column '{}' already exists", flags.name));
    }
    flags.values.reserve(source.values.size());
    for (const auto& value : source.values) {
        flags.values.emplace_back(is_missing(value));
    }
    return frame.with_column(std::move(flags));
}

namespace {

struct Fences {
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double iqr = 0.0;
    double low = 0.0;
    double high = 0.0;
};

auto fences_for(const NumericView& view, double k) -> Fences {
    std::vector<double> sorted = view.values;
    std::sort(sorted.begin(), sorted.end());
    Fences f;
    f.q1 = percentile_sorted(sorted, 25.0);
    f.median = percentile_sorted(sorted, 50.0);
    f.q3 = percentile_sorted(sorted, 75.0);
    f.iqr = f.q3 - f.q1;
    f.low = f.q1 - k * f.iqr;
    f.high = f.q3 + k * f.iqr;
    return f;
}

auto nonempty_view(const Frame& frame, std::string_view column) -> NumericView {
    auto view = numeric_view(require_numeric(frame, column));
    if (view.values.empty()) {
        throw Error(fmt::format("column '{}' has no present values", column));
    }
    return view;
}

}  // namespace

auto boxplot_stats(const Frame& frame, std::string_view column) -> BoxplotStats {
    const auto view = nonempty_view(frame, column);
    const auto f = fences_for(view, 1.5);
    BoxplotStats out;
    out.q1 = f.q1;
    out.median = f.median;
    out.q3 = f.q3;
    out.iqr = f.iqr;
    bool have_low = false;
    bool have_high = false;
    for (std::size_t i = 0; i < view.values.size(); ++i) {
        const double v = view.values[i];
        if (v < f.low || v > f.high) {
            out.outlier_indices.push_back(view.rows[i]);
            continue;
        }
        if (!have_low || v < out.whisker_low) {
            out.whisker_low = v;
            have_low = true;
        }
        if (!have_high || v > out.whisker_high) {
            out.whisker_high = v;
            have_high = true;
        }
    }
    return out;
}

auto to_string(OutlierMethod method) -> std::string_view {
    return method == OutlierMethod::ZScore ? "zscore" : "iqr";
}

auto OutlierReport::to_json() const -> nlohmann::json {
    return nlohmann::json{{"method", to_string(method)},
                          {"threshold", threshold},
                          {"indices", indices},
                          {"scores", scores}};
}

auto zscore_outliers(const Frame& frame, std::string_view column, double threshold)
    -> OutlierReport {
    const auto view = numeric_view(require_numeric(frame, column));
    const auto n = view.values.size();
    if (n < 2) {
        throw Error(fmt::format("z-scores need at least 2 present values in '{}', found {}",
                                column, n));
    }
    double sum = 0.0;
    for (const double v : view.values) {
        sum += v;
    }
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (const double v : view.values) {
        ss += (v - mean) * (v - mean);
    }
    const double sigma = std::sqrt(ss / static_cast<double>(n));
    if (!(sigma > 0.0)) {
        throw Error(fmt::format("column '{}' has no dispersion; z-scores are undefined", column));
    }
    OutlierReport report{OutlierMethod::ZScore, threshold, std::string(column), {}, {}};
    for (std::size_t i = 0; i < n; ++i) {
        const double z = (view.values[i] - mean) / sigma;
        if (std::fabs(z) > threshold) {
            report.indices.push_back(view.rows[i]);
            report.scores.push_back(z);
        }
    }
    return report;
}

auto iqr_outliers(const Frame& frame, std::string_view column, double k) -> OutlierReport {
    if (!(k >= 0.0)) {
        throw Error(fmt::format("IQR multiplier must be non-negative, got {}", k));
    }
    const auto view = nonempty_view(frame, column);
    const auto f = fences_for(view, k);
    OutlierReport report{OutlierMethod::IQR, k, std::string(column), {}, {}};
    for (std::size_t i = 0; i < view.values.size(); ++i) {
        const double v = view.values[i];
        if (v >= f.low && v <= f.high) {
            continue;
        }
        const double beyond = v < f.low ? v - f.low : v - f.high;
        report.indices.push_back(view.rows[i]);
        report.scores.push_back(f.iqr > 0.0 ? beyond / f.iqr : 0.0);
    }
    return report;
}

auto filter_outliers(const Frame& frame, const OutlierReport& report) -> Frame {
    std::vector<bool> drop(frame.row_count(), false);
    for (const auto index : report.indices) {
        if (index >= frame.row_count()) {
            throw Error(fmt::format(
                "outlier report refers to row {} but the frame has {} rows (stale report?)", index,
                frame.row_count()));
        }
        drop[index] = true;
    }
    std::vector<std::size_t> keep;
    for (std::size_t row = 0; row < frame.row_count(); ++row) {
        if (!drop[row]) {
            keep.push_back(row);
        }
    }
    return frame.take_rows(keep);
}

}  // namespace tripeda
