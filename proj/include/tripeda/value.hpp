#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace tripeda {

enum class ColumnType { Text, Int, Float, Timestamp, Bool };

auto to_string(ColumnType type) -> std::string_view;

/// Zone-less civil datetime at second precision.
class Timestamp {
public:
    Timestamp() = default;

    /// Throws tripeda::Error when any component is out of calendar range.
    static auto from_civil(int year, unsigned month, unsigned day, unsigned hour = 0,
                           unsigned minute = 0, unsigned second = 0) -> Timestamp;
    static auto from_seconds(std::int64_t seconds_since_epoch) -> Timestamp;

    auto seconds_since_epoch() const -> std::int64_t { return seconds_; }
    auto date() const -> std::chrono::year_month_day;
    /// Seconds elapsed since midnight, in [0, 86400).
    auto seconds_of_day() const -> std::int64_t;
    auto hour() const -> unsigned { return static_cast<unsigned>(seconds_of_day() / 3600); }

    /// `YYYY-MM-DDTHH:MM:SS`
    auto to_iso() const -> std::string;

    friend auto operator<=>(const Timestamp&, const Timestamp&) = default;

private:
    explicit Timestamp(std::int64_t seconds) : seconds_(seconds) {}
    std::int64_t seconds_ = 0;
};

/// Strict `YYYY-MM-DDTHH:MM:SS`; a single space is accepted in place of `T`.
/// Throws tripeda::Error quoting the text when malformed or calendar-invalid.
auto parse_timestamp(std::string_view text) -> Timestamp;
auto try_parse_timestamp(std::string_view text) -> std::optional<Timestamp>;

struct Missing {
    friend auto operator==(Missing, Missing) -> bool = default;
};

// Alternative order mirrors ColumnType, offset by one for Missing.
using Value = std::variant<Missing, std::string, std::int64_t, double, Timestamp, bool>;

inline auto is_missing(const Value& v) -> bool { return std::holds_alternative<Missing>(v); }

/// Type of a present value; nullopt for Missing.
auto type_of(const Value& v) -> std::optional<ColumnType>;

/// Numeric view of Int and Float values; nullopt for anything else.
auto as_double(const Value& v) -> std::optional<double>;

/// Shortest decimal that round-trips to the same double. Integral values keep
/// a trailing `.0` so they are not mistaken for integers when read back.
auto format_double(double v) -> std::string;

/// Text form used by CSV output and by displays. Missing renders empty.
auto format_value(const Value& v) -> std::string;

/// Full-string parses. Non-finite floats are rejected.
auto parse_int(std::string_view text) -> std::optional<std::int64_t>;
auto parse_float(std::string_view text) -> std::optional<double>;
auto parse_bool(std::string_view text) -> std::optional<bool>;

/// Round half away from zero to the nearest integer.
auto round_half_away(double v) -> std::int64_t;

}  // namespace tripeda
