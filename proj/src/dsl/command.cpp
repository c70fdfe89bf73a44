#include <tripeda/dsl/command.hpp>
#include <tripeda/dsl/token.hpp>

#include <fmt/core.h>
#include <fmt/format.h>

#include <array>
#include <charconv>

namespace tripeda::dsl {

namespace {

auto quote(std::string_view text) -> std::string {
    std::string out = "\"";
    for (const char c : text) {
        if (c == '"' || c == '\\') {
            out.push_back('\\');
        }
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

auto ident(std::string_view text) -> std::string {
    return is_bare_word(text) ? std::string(text) : quote(text);
}

// Shortest round-trip digits in fixed notation; the tokenizer has no exponents.
auto number(double value) -> std::string {
    std::array<char, 400> buf{};
    const auto result =
        std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed);
    return {buf.data(), result.ptr};
}

auto ident_list(const std::vector<std::string>& names) -> std::string {
    std::vector<std::string> parts;
    parts.reserve(names.size());
    for (const auto& name : names) {
        parts.push_back(ident(name));
    }
    return fmt::format("{}", fmt::join(parts, ", "));
}

struct Formatter {
    auto operator()(const Load& c) const -> std::string { return "load " + quote(c.path); }
    auto operator()(const Save& c) const -> std::string { return "save " + quote(c.path); }
    auto operator()(const Generate& c) const -> std::string {
        auto out = fmt::format("generate {} vehicles {} trips", c.vehicles, c.trips);
        if (c.seed) {
            out += fmt::format(" seed {}", *c.seed);
        }
        if (c.missing_fraction) {
            out += fmt::format(" with {} missing timestamps", number(*c.missing_fraction));
        }
        if (c.outlier_fraction) {
            out += fmt::format(" and {} speed outliers", number(*c.outlier_fraction));
        }
        return out;
    }
    auto operator()(const CountMissing&) const -> std::string { return "count missing"; }
    auto operator()(const DropMissing& c) const -> std::string {
        return fmt::format("drop rows where {} is missing", ident(c.column));
    }
    auto operator()(const Impute& c) const -> std::string {
        constexpr std::array names{"mean", "median", "mode"};
        return fmt::format("impute {} with {}", ident(c.column),
                           names[static_cast<std::size_t>(c.strategy)]);
    }
    auto operator()(const Fill& c) const -> std::string {
        return fmt::format("fill {} {}", ident(c.column),
                           c.direction == FillDirection::Forward ? "forward" : "backward");
    }
    auto operator()(const Flag& c) const -> std::string {
        return "flag missing in " + ident(c.column);
    }
    auto operator()(const Convert& c) const -> std::string {
        std::string_view target = "text";
        switch (c.target) {
            case ColumnType::Timestamp: target = "datetime"; break;
            case ColumnType::Int: target = "int"; break;
            case ColumnType::Float: target = "float"; break;
            case ColumnType::Text:
            case ColumnType::Bool: break;
        }
        return fmt::format("convert {} to {}", ident(c.column), target);
    }
    auto operator()(const Summary&) const -> std::string { return "show summary"; }
    auto operator()(const DetectOutliers& c) const -> std::string {
        if (c.method == OutlierMethod::ZScore) {
            return fmt::format("detect outliers in {} using zscore threshold {}", ident(c.column),
                               number(c.threshold));
        }
        return fmt::format("detect outliers in {} using iqr k {}", ident(c.column),
                           number(c.threshold));
    }
    auto operator()(const FilterOutliers&) const -> std::string { return "filter outliers"; }
    auto operator()(const AddFeature& c) const -> std::string {
        switch (c.feature) {
            case Feature::DayOfWeek: return "add day of week";
            case Feature::TripDistance: return "add trip distance";
            case Feature::VehicleAverageSpeed: return "add vehicle average speed";
        }
        return "";
    }
    auto operator()(const Segment&) const -> std::string { return "segment by time of day"; }
    auto operator()(const GroupMean& c) const -> std::string {
        return fmt::format("show mean {} by {}", ident(c.target), ident(c.by));
    }
    auto operator()(const Correlate& c) const -> std::string {
        return "correlate " + ident_list(c.columns);
    }
    auto operator()(const TTest& c) const -> std::string {
        return fmt::format("test {} between {} and {} by {}", ident(c.target), quote(c.first_key),
                           quote(c.second_key), ident(c.group_column));
    }
    auto operator()(const Plot& c) const -> std::string {
        switch (c.kind) {
            case PlotKind::Boxplot:
                return fmt::format("plot boxplot of {} to {}", ident(c.columns.at(0)),
                                   quote(c.path));
            case PlotKind::Bar:
                return fmt::format("plot bar of {} by {} to {}", ident(c.columns.at(0)),
                                   ident(c.by), quote(c.path));
            case PlotKind::Heatmap:
                return fmt::format("plot heatmap of {} to {}", ident_list(c.columns),
                                   quote(c.path));
        }
        return "";
    }
    auto operator()(const Report& c) const -> std::string {
        return "write report to " + quote(c.path);
    }
};

}  // namespace

auto format_command(const Command& command) -> std::string {
    return std::visit(Formatter{}, command);
}

}  // namespace tripeda::dsl
