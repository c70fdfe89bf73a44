#include <tripeda/error.hpp>
#include <tripeda/frame.hpp>

#include <fmt/core.h>
#include <fmt/format.h>

#include <algorithm>

namespace tripeda {

namespace {

void check_column(const Column& column) {
    for (std::size_t row = 0; row < column.values.size(); ++row) {
        const auto type = type_of(column.values[row]);
        if (type && *type != column.type) {
            throw Error(fmt::format("column '{}' is {} but row {} holds a {} value", column.name,
                                    to_string(column.type), row, to_string(*type)));
        }
    }
}

}  // namespace

Frame::Frame(std::vector<Column> columns) : columns_(std::move(columns)) {
    row_count_ = columns_.empty() ? 0 : columns_.front().values.size();
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        const auto& column = columns_[i];
        if (column.values.size() != row_count_) {
            throw Error(fmt::format("column '{}' has {} rows, expected {}", column.name,
                                    column.values.size(), row_count_));
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (columns_[j].name == column.name) {
                throw Error(fmt::format("duplicate column name '{}'", column.name));
            }
        }
        check_column(column);
    }
}

auto Frame::empty_with_rows(std::size_t rows) -> Frame {
    Frame frame;
    frame.row_count_ = rows;
    return frame;
}

auto Frame::column_names() const -> std::vector<std::string> {
    std::vector<std::string> names;
    names.reserve(columns_.size());
    for (const auto& column : columns_) {
        names.push_back(column.name);
    }
    return names;
}

auto Frame::has_column(std::string_view name) const -> bool {
    return std::any_of(columns_.begin(), columns_.end(),
                       [&](const Column& c) { return c.name == name; });
}

auto Frame::column_index(std::string_view name) const -> std::size_t {
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (columns_[i].name == name) {
            return i;
        }
    }
    throw Error(fmt::format("unknown column '{}' (available: {})", name,
                            columns_.empty() ? std::string("<none>")
                                             : fmt::format("{}", fmt::join(column_names(), ", "))));
}

auto Frame::column(std::string_view name) const -> const Column& {
    return columns_[column_index(name)];
}

auto Frame::with_column(Column column) const -> Frame {
    if (has_column(column.name)) {
        throw Error(fmt::format("column '{}' already exists", column.name));
    }
    if (!columns_.empty() && column.values.size() != row_count_) {
        throw Error(fmt::format("column '{}' has {} rows, expected {}", column.name,
                                column.values.size(), row_count_));
    }
    check_column(column);
    Frame out = *this;
    out.row_count_ = column.values.size();
    out.columns_.push_back(std::move(column));
    return out;
}

auto Frame::with_replaced(Column column) const -> Frame {
    const auto index = column_index(column.name);
    if (column.values.size() != row_count_) {
        throw Error(fmt::format("column '{}' has {} rows, expected {}", column.name,
                                column.values.size(), row_count_));
    }
    check_column(column);
    Frame out = *this;
    out.columns_[index] = std::move(column);
    return out;
}

auto Frame::take_rows(std::span<const std::size_t> rows) const -> Frame {
    Frame out;
    out.row_count_ = rows.size();
    out.columns_.reserve(columns_.size());
    for (const auto& column : columns_) {
        Column picked{column.name, column.type, {}};
        picked.values.reserve(rows.size());
        for (const auto row : rows) {
            if (row >= row_count_) {
                throw Error(fmt::format("row index {} out of range for {} rows", row, row_count_));
            }
            picked.values.push_back(column.values[row]);
        }
        out.columns_.push_back(std::move(picked));
    }
    return out;
}

auto require_numeric(const Frame& frame, std::string_view name) -> const Column& {
    const auto& column = frame.column(name);
    if (column.type != ColumnType::Int && column.type != ColumnType::Float) {
        throw Error(fmt::format("column '{}' is {}, expected a numeric column", name,
                                to_string(column.type)));
    }
    return column;
}

auto numeric_view(const Column& column) -> NumericView {
    NumericView view;
    for (std::size_t row = 0; row < column.values.size(); ++row) {
        if (auto v = as_double(column.values[row])) {
            view.values.push_back(*v);
            view.rows.push_back(row);
        }
    }
    return view;
}

}  // namespace tripeda
