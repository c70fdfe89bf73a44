#pragma once

#include <tripeda/value.hpp>

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tripeda {

struct Column {
    std::string name;
    ColumnType type = ColumnType::Text;
    std::vector<Value> values;

    friend auto operator==(const Column&, const Column&) -> bool = default;
};

/// Ordered, named, typed columns of equal length. A Frame is never mutated in
/// place; every transformation builds a new one.
class Frame {
public:
    Frame() = default;

    /// Validates equal lengths, unique names and that every present value
    /// conforms to its column type.
    explicit Frame(std::vector<Column> columns);

    /// Zero-column frame that still reports a row count.
    static auto empty_with_rows(std::size_t rows) -> Frame;

    auto row_count() const -> std::size_t { return row_count_; }
    auto column_count() const -> std::size_t { return columns_.size(); }
    auto columns() const -> const std::vector<Column>& { return columns_; }
    auto column_names() const -> std::vector<std::string>;

    auto has_column(std::string_view name) const -> bool;
    /// Throws with the list of available column names when absent.
    auto column(std::string_view name) const -> const Column&;
    auto column_index(std::string_view name) const -> std::size_t;

    /// Appends a column; refuses to shadow an existing name.
    auto with_column(Column column) const -> Frame;
    /// Replaces the same-named column, keeping its position.
    auto with_replaced(Column column) const -> Frame;
    /// Rows at the given positions, in the given order.
    auto take_rows(std::span<const std::size_t> rows) const -> Frame;

    friend auto operator==(const Frame&, const Frame&) -> bool = default;

private:
    std::vector<Column> columns_;
    std::size_t row_count_ = 0;
};

/// Throws unless the named column holds Int or Float values.
auto require_numeric(const Frame& frame, std::string_view name) -> const Column&;

/// Non-missing numeric values of a column paired with their row positions.
struct NumericView {
    std::vector<double> values;
    std::vector<std::size_t> rows;
};
auto numeric_view(const Column& column) -> NumericView;

}  // namespace tripeda
