#include <tripeda/error.hpp>
#include <tripeda/value.hpp>

#include <fmt/core.h>

#include <array>
#include <charconv>
#include <cmath>

namespace tripeda {

namespace {

using namespace std::chrono;

constexpr std::int64_t kSecondsPerDay = 86400;

auto digits(std::string_view text, std::size_t pos, std::size_t count) -> std::optional<unsigned> {
    unsigned out = 0;
    for (std::size_t i = pos; i < pos + count; ++i) {
        const char c = text[i];
        if (c < '0' || c > '9') {
            return std::nullopt;
        }
        out = out * 10 + static_cast<unsigned>(c - '0');
    }
    return out;
}

auto floor_div(std::int64_t a, std::int64_t b) -> std::int64_t {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) {
        --q;
    }
    return q;
}

}  // namespace

auto to_string(ColumnType type) -> std::string_view {
    switch (type) {
        case ColumnType::Text: return "Text";
        case ColumnType::Int: return "Int";
        case ColumnType::Float: return "Float";
        case ColumnType::Timestamp: return "Timestamp";
        case ColumnType::Bool: return "Bool";
    }
    return "?";
}

auto Timestamp::from_civil(int year, unsigned month, unsigned day, unsigned hour, unsigned minute,
                           unsigned second) -> Timestamp {
    const year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                             std::chrono::day{day}};
    if (!ymd.ok() || hour > 23 || minute > 59 || second > 59) {
        throw Error(fmt::format("invalid civil datetime {:04d}-{:02d}-{:02d}T{:02d}:{:02d}:{:02d}",
                                year, month, day, hour, minute, second));
    }
    const auto days_since_epoch = sys_days{ymd}.time_since_epoch().count();
    return Timestamp(static_cast<std::int64_t>(days_since_epoch) * kSecondsPerDay +
                     hour * 3600 + minute * 60 + second);
}

auto Timestamp::from_seconds(std::int64_t seconds_since_epoch) -> Timestamp {
    return Timestamp(seconds_since_epoch);
}

auto Timestamp::date() const -> year_month_day {
    return year_month_day{sys_days{days{floor_div(seconds_, kSecondsPerDay)}}};
}

auto Timestamp::seconds_of_day() const -> std::int64_t {
    return seconds_ - floor_div(seconds_, kSecondsPerDay) * kSecondsPerDay;
}

auto Timestamp::to_iso() const -> std::string {
    const auto ymd = date();
    const auto sod = seconds_of_day();
    return fmt::format("{:04d}-{:02d}-{:02d}T{:02d}:{:02d}:{:02d}", static_cast<int>(ymd.year()),
                       static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                       sod / 3600, (sod / 60) % 60, sod % 60);
}

auto try_parse_timestamp(std::string_view text) -> std::optional<Timestamp> {
    // YYYY-MM-DDTHH:MM:SS
    if (text.size() != 19 || text[4] != '-' || text[7] != '-' ||
        (text[10] != 'T' && text[10] != ' ') || text[13] != ':' || text[16] != ':') {
        return std::nullopt;
    }
    const auto y = digits(text, 0, 4);
    const auto mo = digits(text, 5, 2);
    const auto d = digits(text, 8, 2);
    const auto h = digits(text, 11, 2);
    const auto mi = digits(text, 14, 2);
    const auto s = digits(text, 17, 2);
    if (!y || !mo || !d || !h || !mi || !s) {
        return std::nullopt;
    }
    const year_month_day ymd{std::chrono::year{static_cast<int>(*y)}, std::chrono::month{*mo},
                             std::chrono::day{*d}};
    if (!ymd.ok() || *h > 23 || *mi > 59 || *s > 59) {
        return std::nullopt;
    }
    return Timestamp::from_civil(static_cast<int>(*y), *mo, *d, *h, *mi, *s);
}

auto parse_timestamp(std::string_view text) -> Timestamp {
    if (auto ts = try_parse_timestamp(text)) {
        return *ts;
    }
    throw Error(fmt::format("invalid timestamp '{}' (expected YYYY-MM-DDTHH:MM:SS)", text));
}

auto type_of(const Value& v) -> std::optional<ColumnType> {
    switch (v.index()) {
        case 1: return ColumnType::Text;
        case 2: return ColumnType::Int;
        case 3: return ColumnType::Float;
        case 4: return ColumnType::Timestamp;
        case 5: return ColumnType::Bool;
        default: return std::nullopt;
    }
}

auto as_double(const Value& v) -> std::optional<double> {
    if (const auto* i = std::get_if<std::int64_t>(&v)) {
        return static_cast<double>(*i);
    }
    if (const auto* d = std::get_if<double>(&v)) {
        return *d;
    }
    return std::nullopt;
}

auto format_double(double v) -> std::string {
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    std::string out(buf.data(), end);
    if (out.find_first_of(".eEn") == std::string::npos) {
        out += ".0";
    }
    return out;
}

auto format_value(const Value& v) -> std::string {
    struct Visitor {
        auto operator()(Missing) const -> std::string { return {}; }
        auto operator()(const std::string& s) const -> std::string { return s; }
        auto operator()(std::int64_t i) const -> std::string { return std::to_string(i); }
        auto operator()(double d) const -> std::string { return format_double(d); }
        auto operator()(const Timestamp& t) const -> std::string { return t.to_iso(); }
        auto operator()(bool b) const -> std::string { return b ? "true" : "false"; }
    };
    return std::visit(Visitor{}, v);
}

auto parse_int(std::string_view text) -> std::optional<std::int64_t> {
    std::int64_t out = 0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (text.empty() || ec != std::errc{} || ptr != last) {
        return std::nullopt;
    }
    return out;
}

auto parse_float(std::string_view text) -> std::optional<double> {
    double out = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (text.empty() || ec != std::errc{} || ptr != last || !std::isfinite(out)) {
        return std::nullopt;
    }
    return out;
}

auto parse_bool(std::string_view text) -> std::optional<bool> {
    if (text == "true") {
        return true;
    }
    if (text == "false") {
        return false;
    }
    return std::nullopt;
}

auto round_half_away(double v) -> std::int64_t {
    if (!std::isfinite(v) || std::fabs(v) >= 9.2e18) {
        throw Error(fmt::format("value {} cannot be rounded to a 64-bit integer", v));
    }
    return std::llround(v);
}

}  // namespace tripeda
