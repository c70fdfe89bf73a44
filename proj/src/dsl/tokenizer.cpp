#include <tripeda/dsl/token.hpp>

#include <cctype>

namespace tripeda::dsl {

namespace {

auto is_space(char c) -> bool { return std::isspace(static_cast<unsigned char>(c)) != 0; }

auto is_number_literal(std::string_view text) -> bool {
    std::size_t i = 0;
    if (i < text.size() && text[i] == '-') {
        ++i;
    }
    const std::size_t int_start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])) != 0) {
        ++i;
    }
    if (i == int_start) {
        return false;
    }
    if (i < text.size() && text[i] == '.') {
        ++i;
        const std::size_t frac_start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])) != 0) {
            ++i;
        }
        if (i == frac_start) {
            return false;
        }
    }
    return i == text.size();
}

auto classify(std::string_view run) -> TokenKind {
    if (is_number_literal(run)) {
        return TokenKind::Number;
    }
    if (run.size() > 1 && run.back() == '%' && is_number_literal(run.substr(0, run.size() - 1))) {
        return TokenKind::Percent;
    }
    return TokenKind::Word;
}

}  // namespace

auto to_string(TokenKind kind) -> std::string_view {
    switch (kind) {
        case TokenKind::Word: return "word";
        case TokenKind::Number: return "number";
        case TokenKind::Percent: return "percentage";
        case TokenKind::QuotedString: return "quoted string";
        case TokenKind::Comma: return "','";
        case TokenKind::EndOfLine: return "end of line";
    }
    return "?";
}

auto tokenize(std::string_view line) -> std::vector<Token> {
    std::vector<Token> tokens;
    std::size_t pos = 0;
    while (pos < line.size()) {
        const char c = line[pos];
        if (is_space(c)) {
            ++pos;
            continue;
        }
        if (c == ',') {
            tokens.push_back({TokenKind::Comma, ",", pos});
            ++pos;
            continue;
        }
        if (c == '"') {
            const std::size_t start = pos;
            std::string text;
            ++pos;
            bool closed = false;
            while (pos < line.size()) {
                const char d = line[pos];
                if (d == '\\' && pos + 1 < line.size() &&
                    (line[pos + 1] == '"' || line[pos + 1] == '\\')) {
                    text.push_back(line[pos + 1]);
                    pos += 2;
                    continue;
                }
                if (d == '"') {
                    closed = true;
                    ++pos;
                    break;
                }
                text.push_back(d);
                ++pos;
            }
            if (!closed) {
                throw SyntaxError("unterminated quoted string", start);
            }
            tokens.push_back({TokenKind::QuotedString, std::move(text), start});
            continue;
        }
        const std::size_t start = pos;
        while (pos < line.size() && !is_space(line[pos]) && line[pos] != ',' && line[pos] != '"') {
            ++pos;
        }
        const auto run = line.substr(start, pos - start);
        const auto kind = classify(run);
        std::string text(kind == TokenKind::Percent ? run.substr(0, run.size() - 1) : run);
        tokens.push_back({kind, std::move(text), start});
    }
    tokens.push_back({TokenKind::EndOfLine, "", line.size()});
    return tokens;
}

auto is_bare_word(std::string_view text) -> bool {
    if (text.empty()) {
        return false;
    }
    for (const char c : text) {
        if (is_space(c) || c == ',' || c == '"') {
            return false;
        }
    }
    return classify(text) == TokenKind::Word;
}

}  // namespace tripeda::dsl
