#include <tripeda/dsl/command.hpp>
#include <tripeda/dsl/token.hpp>

#include <fmt/core.h>
#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>

namespace tripeda::dsl {

namespace {

auto iequals(std::string_view a, std::string_view b) -> bool {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) ==
                      std::tolower(static_cast<unsigned char>(y));
           });
}

auto describe(const Token& token) -> std::string {
    switch (token.kind) {
        case TokenKind::Word: return fmt::format("'{}'", token.text);
        case TokenKind::Number: return fmt::format("number {}", token.text);
        case TokenKind::Percent: return fmt::format("percentage {}%", token.text);
        case TokenKind::QuotedString: return fmt::format("string \"{}\"", token.text);
        case TokenKind::Comma: return "','";
        case TokenKind::EndOfLine: return "end of line";
    }
    return "?";
}

// Recursive descent over one statement; two tokens of lookahead are enough
// (e.g. `show summary` versus `show mean`).
class Parser {
public:
    explicit Parser(std::string_view line) : tokens_(tokenize(line)) {}

    auto statement() -> Command {
        const Token& head = peek();
        if (head.kind != TokenKind::Word) {
            fail_unknown(head);
        }
        const std::string word = lower(head.text);
        Command command = dispatch(word, head);
        expect_end();
        return command;
    }

private:
    auto dispatch(const std::string& word, const Token& head) -> Command {
        if (word == "load") {
            advance();
            return Load{expect_string("a file path")};
        }
        if (word == "save") {
            advance();
            return Save{expect_string("a file path")};
        }
        if (word == "generate") {
            advance();
            return generate();
        }
        if (word == "count") {
            advance();
            expect_keyword("missing");
            return CountMissing{};
        }
        if (word == "drop") {
            advance();
            expect_keyword("rows");
            expect_keyword("where");
            auto column = expect_ident("a column name");
            expect_keyword("is");
            expect_keyword("missing");
            return DropMissing{std::move(column)};
        }
        if (word == "impute") {
            advance();
            auto column = expect_ident("a column name");
            expect_keyword("with");
            const auto choice = expect_one_of({"mean", "median", "mode"});
            constexpr std::array strategies{ImputeStrategy::Mean, ImputeStrategy::Median,
                                            ImputeStrategy::Mode};
            return Impute{std::move(column), strategies[choice]};
        }
        if (word == "fill") {
            advance();
            auto column = expect_ident("a column name");
            const auto choice = expect_one_of({"forward", "backward"});
            return Fill{std::move(column),
                        choice == 0 ? FillDirection::Forward : FillDirection::Backward};
        }
        if (word == "flag") {
            advance();
            expect_keyword("missing");
            expect_keyword("in");
            return Flag{expect_ident("a column name")};
        }
        if (word == "convert") {
            advance();
            auto column = expect_ident("a column name");
            expect_keyword("to");
            const auto choice = expect_one_of({"datetime", "int", "float", "text"});
            constexpr std::array targets{ColumnType::Timestamp, ColumnType::Int,
                                         ColumnType::Float, ColumnType::Text};
            return Convert{std::move(column), targets[choice]};
        }
        if (word == "show") {
            advance();
            if (at_keyword("summary")) {
                advance();
                return Summary{};
            }
            if (at_keyword("mean")) {
                advance();
                auto target = expect_ident("a column name");
                expect_keyword("by");
                return GroupMean{std::move(target), expect_ident("a column name")};
            }
            fail_expected("'summary' or 'mean'");
        }
        if (word == "detect") {
            advance();
            return detect();
        }
        if (word == "filter") {
            advance();
            expect_keyword("outliers");
            return FilterOutliers{};
        }
        if (word == "add") {
            advance();
            const auto choice = expect_one_of({"day", "trip", "vehicle"});
            if (choice == 0) {
                expect_keyword("of");
                expect_keyword("week");
                return AddFeature{Feature::DayOfWeek};
            }
            if (choice == 1) {
                expect_keyword("distance");
                return AddFeature{Feature::TripDistance};
            }
            expect_keyword("average");
            expect_keyword("speed");
            return AddFeature{Feature::VehicleAverageSpeed};
        }
        if (word == "segment") {
            advance();
            expect_keyword("by");
            expect_keyword("time");
            expect_keyword("of");
            expect_keyword("day");
            return Segment{};
        }
        if (word == "correlate") {
            advance();
            return Correlate{ident_list()};
        }
        if (word == "test") {
            advance();
            TTest test;
            test.target = expect_ident("a column name");
            expect_keyword("between");
            test.first_key = expect_string("a quoted group value");
            expect_keyword("and");
            test.second_key = expect_string("a quoted group value");
            expect_keyword("by");
            test.group_column = expect_ident("a column name");
            return test;
        }
        if (word == "plot") {
            advance();
            return plot();
        }
        if (word == "write") {
            advance();
            expect_keyword("report");
            expect_keyword("to");
            return Report{expect_string("a file path")};
        }
        fail_unknown(head);
    }

    auto generate() -> Generate {
        Generate g;
        g.vehicles = expect_count("a vehicle count");
        expect_keyword("vehicles");
        g.trips = expect_count("a trip count");
        expect_keyword("trips");
        if (at_keyword("seed")) {
            advance();
            g.seed = expect_integer("a seed");
        }
        if (at_keyword("with")) {
            advance();
            g.missing_fraction = expect_fraction();
            expect_keyword("missing");
            expect_keyword("timestamps");
        }
        if (at_keyword("and")) {
            advance();
            g.outlier_fraction = expect_fraction();
            expect_keyword("speed");
            expect_keyword("outliers");
        }
        return g;
    }

    auto detect() -> DetectOutliers {
        expect_keyword("outliers");
        expect_keyword("in");
        DetectOutliers d;
        d.column = expect_ident("a column name");
        expect_keyword("using");
        const auto choice = expect_one_of({"zscore", "iqr"});
        if (choice == 0) {
            expect_keyword("threshold");
            d.method = OutlierMethod::ZScore;
            d.threshold = expect_number("a z-score threshold");
        } else {
            d.method = OutlierMethod::IQR;
            d.threshold = 1.5;
            if (at_keyword("k")) {
                advance();
                d.threshold = expect_number("an IQR multiplier");
            }
        }
        return d;
    }

    auto plot() -> Plot {
        Plot p;
        const auto choice = expect_one_of({"boxplot", "bar", "heatmap"});
        expect_keyword("of");
        if (choice == 0) {
            p.kind = PlotKind::Boxplot;
            p.columns.push_back(expect_ident("a column name"));
        } else if (choice == 1) {
            p.kind = PlotKind::Bar;
            p.columns.push_back(expect_ident("a column name"));
            expect_keyword("by");
            p.by = expect_ident("a column name");
        } else {
            p.kind = PlotKind::Heatmap;
            p.columns = ident_list();
        }
        expect_keyword("to");
        p.path = expect_string("an output path");
        return p;
    }

    auto ident_list() -> std::vector<std::string> {
        std::vector<std::string> out{expect_ident("a column name")};
        while (peek().kind == TokenKind::Comma) {
            advance();
            out.push_back(expect_ident("a column name"));
        }
        return out;
    }

    static auto lower(std::string_view text) -> std::string {
        std::string out(text);
        std::transform(out.begin(), out.end(), out.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        return out;
    }

    auto peek(std::size_t ahead = 0) const -> const Token& {
        return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
    }
    void advance() {
        if (pos_ + 1 < tokens_.size()) {
            ++pos_;
        }
    }

    auto at_keyword(std::string_view keyword) const -> bool {
        return peek().kind == TokenKind::Word && iequals(peek().text, keyword);
    }

    void expect_keyword(std::string_view keyword) {
        if (!at_keyword(keyword)) {
            fail_expected(fmt::format("'{}'", keyword));
        }
        advance();
    }

    auto expect_one_of(std::initializer_list<std::string_view> keywords) -> std::size_t {
        std::size_t index = 0;
        for (const auto keyword : keywords) {
            if (at_keyword(keyword)) {
                advance();
                return index;
            }
            ++index;
        }
        std::vector<std::string> quoted;
        for (const auto keyword : keywords) {
            quoted.push_back(fmt::format("'{}'", keyword));
        }
        fail_expected(fmt::format("one of {}", fmt::join(quoted, ", ")));
    }

    auto expect_ident(std::string_view what) -> std::string {
        const Token& t = peek();
        if (t.kind != TokenKind::Word && t.kind != TokenKind::QuotedString) {
            fail_expected(what);
        }
        advance();
        return t.text;
    }

    auto expect_string(std::string_view what) -> std::string {
        const Token& t = peek();
        if (t.kind != TokenKind::QuotedString) {
            fail_expected(fmt::format("{} in double quotes", what));
        }
        advance();
        return t.text;
    }

    auto expect_number(std::string_view what) -> double {
        const Token& t = peek();
        if (t.kind != TokenKind::Number) {
            fail_expected(what);
        }
        double value = 0.0;
        std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
        advance();
        return value;
    }

    auto expect_integer(std::string_view what) -> std::uint64_t {
        const Token& t = peek();
        std::uint64_t value = 0;
        const auto* last = t.text.data() + t.text.size();
        if (t.kind != TokenKind::Number ||
            std::from_chars(t.text.data(), last, value).ptr != last) {
            fail_expected(fmt::format("{} (a non-negative whole number)", what));
        }
        advance();
        return value;
    }

    auto expect_count(std::string_view what) -> std::uint64_t {
        const Token& t = peek();
        const auto value = expect_integer(what);
        if (value == 0) {
            throw SyntaxError(fmt::format("expected {} greater than zero but found {}", what,
                                          describe(t)),
                              t.offset);
        }
        return value;
    }

    auto expect_fraction() -> double {
        const Token& t = peek();
        if (t.kind != TokenKind::Number && t.kind != TokenKind::Percent) {
            fail_expected("a fraction (e.g. 0.05 or 5%)");
        }
        double value = 0.0;
        std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
        if (t.kind == TokenKind::Percent) {
            value /= 100.0;
        }
        if (!(value >= 0.0 && value < 1.0)) {
            throw SyntaxError(
                fmt::format("expected a fraction in [0, 1) but found {}", describe(t)), t.offset);
        }
        advance();
        return value;
    }

    void expect_end() {
        if (peek().kind != TokenKind::EndOfLine) {
            fail_expected("end of line");
        }
    }

    [[noreturn]] void fail_expected(std::string_view expected) const {
        throw SyntaxError(fmt::format("expected {} but found {}", expected, describe(peek())),
                          peek().offset);
    }

    [[noreturn]] static void fail_unknown(const Token& head) {
        throw SyntaxError(fmt::format("unknown statement {}; statements start with one of: {}",
                                      describe(head), fmt::join(statement_heads(), ", ")),
                          head.offset);
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

}  // namespace

auto statement_heads() -> const std::vector<std::string>& {
    static const std::vector<std::string> heads{
        "add",  "convert", "correlate", "count", "detect", "drop",    "fill",
        "filter", "flag",  "generate",  "impute", "load",  "plot",    "save",
        "segment", "show", "test",      "write"};
    return heads;
}

auto parse_command(std::string_view line) -> Command {
    return Parser(line).statement();
}

}  // namespace tripeda::dsl
