#include <tripeda/csv.hpp>
#include <tripeda/error.hpp>

#include <fmt/core.h>

#include <fstream>
#include <iterator>
#include <sstream>

namespace tripeda {

namespace {

struct Field {
    std::string text;
    bool quoted = false;
};

struct Record {
    std::vector<Field> fields;
    std::size_t line = 0;  // 1-based line where the record starts
};

auto split_records(std::string_view text) -> std::vector<Record> {
    if (text.starts_with("\xEF\xBB\xBF")) {
        text.remove_prefix(3);
    }
    std::vector<Record> records;
    std::size_t line = 1;
    std::size_t pos = 0;
    while (pos < text.size()) {
        Record record;
        record.line = line;
        bool end_of_record = false;
        while (!end_of_record) {
            Field field;
            if (pos < text.size() && text[pos] == '"') {
                field.quoted = true;
                ++pos;
                while (true) {
                    if (pos >= text.size()) {
                        throw Error(fmt::format("line {}: unterminated quoted field", record.line));
                    }
                    const char c = text[pos];
                    if (c == '"') {
                        if (pos + 1 < text.size() && text[pos + 1] == '"') {
                            field.text.push_back('"');
                            pos += 2;
                            continue;
                        }
                        ++pos;
                        break;
                    }
                    if (c == '\n') {
                        ++line;
                    }
                    field.text.push_back(c);
                    ++pos;
                }
                if (pos < text.size() && text[pos] == '\r' && pos + 1 < text.size() &&
                    text[pos + 1] == '\n') {
                    ++pos;
                }
                if (pos < text.size() && text[pos] != ',' && text[pos] != '\n') {
                    throw Error(fmt::format("line {}: unexpected character after closing quote",
                                            line));
                }
            } else {
                while (pos < text.size() && text[pos] != ',' && text[pos] != '\n') {
                    if (text[pos] == '\r' && pos + 1 < text.size() && text[pos + 1] == '\n') {
                        ++pos;
                        continue;
                    }
                    field.text.push_back(text[pos]);
                    ++pos;
                }
            }
            record.fields.push_back(std::move(field));
            if (pos >= text.size()) {
                end_of_record = true;
            } else if (text[pos] == ',') {
                ++pos;
            } else {
                ++pos;  // '\n'
                ++line;
                end_of_record = true;
            }
        }
        records.push_back(std::move(record));
    }
    return records;
}

auto infer_type(const std::vector<Record>& rows, std::size_t col) -> ColumnType {
    bool any_present = false;
    bool all_int = true;
    bool all_float = true;
    bool all_ts = true;
    bool all_bool = true;
    for (const auto& row : rows) {
        const auto& field = row.fields[col];
        if (!field.quoted && field.text.empty()) {
            continue;
        }
        any_present = true;
        if (field.quoted) {
            return ColumnType::Text;
        }
        all_int = all_int && parse_int(field.text).has_value();
        all_float = all_float && parse_float(field.text).has_value();
        all_ts = all_ts && try_parse_timestamp(field.text).has_value();
        all_bool = all_bool && parse_bool(field.text).has_value();
        if (!all_int && !all_float && !all_ts && !all_bool) {
            return ColumnType::Text;
        }
    }
    if (!any_present) {
        return ColumnType::Text;
    }
    if (all_int) {
        return ColumnType::Int;
    }
    if (all_float) {
        return ColumnType::Float;
    }
    if (all_ts) {
        return ColumnType::Timestamp;
    }
    return all_bool ? ColumnType::Bool : ColumnType::Text;
}

auto parse_field(const Field& field, ColumnType type) -> std::optional<Value> {
    if (!field.quoted && field.text.empty()) {
        return Value{Missing{}};
    }
    switch (type) {
        case ColumnType::Text: return Value{field.text};
        case ColumnType::Int:
            if (auto v = parse_int(field.text)) {
                return Value{*v};
            }
            break;
        case ColumnType::Float:
            if (auto v = parse_float(field.text)) {
                return Value{*v};
            }
            break;
        case ColumnType::Timestamp:
            if (auto v = try_parse_timestamp(field.text)) {
                return Value{*v};
            }
            break;
        case ColumnType::Bool:
            if (auto v = parse_bool(field.text)) {
                return Value{*v};
            }
            break;
    }
    if (field.text.empty()) {
        return Value{Missing{}};
    }
    return std::nullopt;
}

auto needs_quotes(const Value& value, const std::string& text) -> bool {
    if (!std::holds_alternative<std::string>(value)) {
        return false;
    }
    return text.empty() || text.find_first_of(",\"\r\n") != std::string::npos ||
           parse_int(text) || parse_float(text) || try_parse_timestamp(text) || parse_bool(text);
}

void write_field(std::ostream& out, const Value& value) {
    const auto text = format_value(value);
    if (!needs_quotes(value, text)) {
        out << text;
        return;
    }
    out << '"';
    for (const char c : text) {
        if (c == '"') {
            out << '"';
        }
        out << c;
    }
    out << '"';
}

void write_name(std::ostream& out, const std::string& name) {
    if (name.empty() || name.find_first_of(",\"\r\n") != std::string::npos) {
        write_field(out, Value{name});
    } else {
        out << name;
    }
}

}  // namespace

auto read_csv(std::string_view text, const std::optional<Schema>& schema) -> Frame {
    auto records = split_records(text);
    if (records.empty()) {
        throw Error("CSV input is empty (a header row is required)");
    }
    const auto header = records.front();
    records.erase(records.begin());
    const auto width = header.fields.size();

    if (schema) {
        if (schema->size() != width) {
            throw Error(fmt::format("header has {} columns but the schema lists {}", width,
                                    schema->size()));
        }
        for (std::size_t c = 0; c < width; ++c) {
            if (header.fields[c].text != (*schema)[c].first) {
                throw Error(fmt::format("header column {} is '{}' but the schema expects '{}'",
                                        c + 1, header.fields[c].text, (*schema)[c].first));
            }
        }
    }
    for (const auto& record : records) {
        if (record.fields.size() != width) {
            throw Error(fmt::format("line {}: expected {} fields, found {}", record.line, width,
                                    record.fields.size()));
        }
    }

    std::vector<Column> columns;
    columns.reserve(width);
    for (std::size_t c = 0; c < width; ++c) {
        const auto type = schema ? (*schema)[c].second : infer_type(records, c);
        Column column{header.fields[c].text, type, {}};
        column.values.reserve(records.size());
        for (std::size_t r = 0; r < records.size(); ++r) {
            const auto& field = records[r].fields[c];
            auto value = parse_field(field, type);
            if (!value) {
                throw Error(fmt::format("line {} (row {}), column '{}': cannot read '{}' as {}",
                                        records[r].line, r, column.name, field.text,
                                        to_string(type)));
            }
            column.values.push_back(std::move(*value));
        }
        columns.push_back(std::move(column));
    }
    if (columns.empty()) {
        return Frame::empty_with_rows(records.size());
    }
    return Frame(std::move(columns));
}

auto read_csv(std::istream& in, const std::optional<Schema>& schema) -> Frame {
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return read_csv(std::string_view(text), schema);
}

auto read_csv_file(const std::filesystem::path& path, const std::optional<Schema>& schema)
    -> Frame {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(fmt::format("cannot open '{}' for reading", path.string()));
    }
    return read_csv(in, schema);
}

void write_csv(const Frame& frame, std::ostream& out) {
    const auto& columns = frame.columns();
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c > 0) {
            out << ',';
        }
        write_name(out, columns[c].name);
    }
    out << '\n';
    for (std::size_t r = 0; r < frame.row_count(); ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c > 0) {
                out << ',';
            }
            write_field(out, columns[c].values[r]);
        }
        out << '\n';
    }
}

auto write_csv(const Frame& frame) -> std::string {
    std::ostringstream out;
    write_csv(frame, out);
    return out.str();
}

void write_csv_file(const Frame& frame, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(fmt::format("cannot open '{}' for writing", path.string()));
    }
    write_csv(frame, out);
    if (!out) {
        throw Error(fmt::format("failed writing '{}'", path.string()));
    }
}

auto dtypes(const Frame& frame) -> std::vector<std::pair<std::string, ColumnType>> {
    std::vector<std::pair<std::string, ColumnType>> out;
    for (const auto& column : frame.columns()) {
        out.emplace_back(column.name, column.type);
    }
    return out;
}

auto convert_column(const Frame& frame, std::string_view name, ColumnType target) -> Frame {
    const auto& source = frame.column(name);
    if (source.type == target) {
        return frame;
    }
    Column out{source.name, target, {}};
    out.values.reserve(source.values.size());
    for (std::size_t row = 0; row < source.values.size(); ++row) {
        const auto& value = source.values[row];
        if (is_missing(value)) {
            out.values.emplace_back(Missing{});
            continue;
        }
        auto fail = [&]() -> Error {
            return Error(fmt::format("column '{}', row {}: cannot convert '{}' from {} to {}", name,
                                     row, format_value(value), to_string(source.type),
                                     to_string(target)));
        };
        if (target == ColumnType::Text) {
            out.values.emplace_back(format_value(value));
        } else if (source.type == ColumnType::Text) {
            const auto& text = std::get<std::string>(value);
            auto parsed = parse_field(Field{text, true}, target);
            if (!parsed || is_missing(*parsed)) {
                throw fail();
            }
            out.values.push_back(std::move(*parsed));
        } else if (source.type == ColumnType::Int && target == ColumnType::Float) {
            out.values.emplace_back(static_cast<double>(std::get<std::int64_t>(value)));
        } else if (source.type == ColumnType::Float && target == ColumnType::Int) {
            const double d = std::get<double>(value);
            if (d >= 9.2e18 || d <= -9.2e18 ||
                d != static_cast<double>(static_cast<std::int64_t>(d))) {
                throw fail();
            }
            out.values.emplace_back(static_cast<std::int64_t>(d));
        } else {
            throw Error(fmt::format("column '{}': no conversion from {} to {}", name,
                                    to_string(source.type), to_string(target)));
        }
    }
    return frame.with_replaced(std::move(out));
}

}  // namespace tripeda
