#pragma once

#include <tripeda/frame.hpp>

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tripeda {

using Schema = std::vector<std::pair<std::string, ColumnType>>;

// CSV ingestion and emission.
//
// Empty unquoted fields are Missing. Without a schema each column is typed by
// scanning every field: all Int, else all Float, else all timestamps, else all
// `true`/`false` (Bool), else Text. A quoted field always counts as Text
// evidence, which is how the writer keeps numeric-looking or timestamp-looking
// text stable across a round trip.
auto read_csv(std::istream& in, const std::optional<Schema>& schema = std::nullopt) -> Frame;
auto read_csv(std::string_view text, const std::optional<Schema>& schema = std::nullopt) -> Frame;
auto read_csv_file(const std::filesystem::path& path,
                   const std::optional<Schema>& schema = std::nullopt) -> Frame;

/// `\n` line endings, Missing as an empty field, timestamps in ISO form,
/// floats in shortest round-trip form.
void write_csv(const Frame& frame, std::ostream& out);
auto write_csv(const Frame& frame) -> std::string;
void write_csv_file(const Frame& frame, const std::filesystem::path& path);

auto dtypes(const Frame& frame) -> std::vector<std::pair<std::string, ColumnType>>;

/// Retypes one column. Missing stays Missing; converting to the current type
/// returns the frame unchanged.
auto convert_column(const Frame& frame, std::string_view name, ColumnType target) -> Frame;

}  // namespace tripeda
