#pragma once

#include <tripeda/error.hpp>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace tripeda::dsl {

enum class TokenKind { Word, Number, Percent, QuotedString, Comma, EndOfLine };

auto to_string(TokenKind kind) -> std::string_view;

struct Token {
    TokenKind kind = TokenKind::EndOfLine;
    // Word: as written. Number: the literal. Percent: the literal without '%'.
    // QuotedString: the unescaped contents.
    std::string text;
    std::size_t offset = 0;  // byte offset of the first character

    friend auto operator==(const Token&, const Token&) -> bool = default;
};

/// Lexing or parsing failure at a byte offset in the statement text.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& message, std::size_t offset)
        : Error(message + " at offset " + std::to_string(offset)), offset_(offset) {}

    auto offset() const -> std::size_t { return offset_; }

private:
    std::size_t offset_;
};

/// Splits one line into tokens, always ending with EndOfLine. Bare runs of
/// non-space characters are Numbers when they read as `-?digits[.digits]`,
/// Percents with a trailing `%`, and Words otherwise. Double-quoted strings
/// support `\"` and `\\`.
auto tokenize(std::string_view line) -> std::vector<Token>;

/// True when `text` would come back from tokenize() as a single Word.
auto is_bare_word(std::string_view text) -> bool;

}  // namespace tripeda::dsl
