#include "solmut/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "solmut/errors.hpp"
#include "solmut/tables.hpp"

namespace solmut {

namespace {

constexpr std::string_view kKeywords[] = {
    "pragma",    "import",   "contract",  "interface", "library",
    "is",        "function", "constructor", "modifier", "event",   "emit",      "returns",
    "return",    "if",       "else",      "for",      "while",     "do",        "break",
    "continue",  "delete",   "new",       "public",   "external",  "internal",  "private",
    "pure",      "view",     "payable",   "constant", "immutable", "memory",    "storage",
    "calldata",  "mapping",  "struct",    "enum",     "true",      "false",     "using",
    "indexed",   "anonymous", "assembly", "throw",    "var",       "override",  "virtual",
    "fallback",  "receive",  "try",       "catch",    "unchecked", "abstract",  "type",
    "address",   "bool",     "string",    "bytes",    "byte"};

// Longest first within each leading character.
constexpr std::string_view kOperators[] = {
    "<<=", ">>=", "**", "=>", "==", "!=", "<=", ">=", "&&", "||", "++", "--",
    "+=",  "-=",  "*=", "/=", "%=", "&=", "|=", "^=", "<<", ">>", "+",  "-",
    "*",   "/",   "%",  "=",  "<",  ">",  "!",  "~",  "&",  "|",  "^"};

bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}
bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_hex(char c) { return std::isxdigit(static_cast<unsigned char>(c)) != 0; }

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), is_digit);
}

class Scanner {
public:
    explicit Scanner(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (pos_ < src_.size()) out.push_back(next());
        return out;
    }

private:
    Token next() {
        begin_ = pos_;
        begin_line_ = line_;
        begin_col_ = col_;
        char c = src_[pos_];

        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            while (pos_ < src_.size() &&
                   (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\r' || src_[pos_] == '\n'))
                advance();
            return make(TokenKind::whitespace);
        }
        if (c == '/' && peek(1) == '/') {
            while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            return make(TokenKind::comment);
        }
        if (c == '/' && peek(1) == '*') {
            advance();
            advance();
            while (true) {
                if (pos_ >= src_.size()) fail("unterminated block comment");
                if (src_[pos_] == '*' && peek(1) == '/') {
                    advance();
                    advance();
                    break;
                }
                advance();
            }
            return make(TokenKind::comment);
        }
        if (c == '"' || c == '\'') {
            scan_string();
            return make(TokenKind::string_literal);
        }
        if (is_digit(c) || (c == '.' && is_digit(peek(1)))) {
            scan_number();
            return make(TokenKind::number_literal);
        }
        if (is_ident_start(c)) {
            while (pos_ < src_.size() && is_ident_char(src_[pos_])) advance();
            std::string_view word = src_.substr(begin_, pos_ - begin_);
            if ((word == "hex" || word == "unicode") && pos_ < src_.size() &&
                (src_[pos_] == '"' || src_[pos_] == '\'')) {
                scan_string();
                return make(TokenKind::string_literal);
            }
            if (is_unit_suffix(word)) return make(TokenKind::unit_suffix);
            if (is_keyword(word)) return make(TokenKind::keyword);
            return make(TokenKind::identifier);
        }
        switch (c) {
        case '(': case ')': case '[': case ']': case '{': case '}': case ';': case ',': case '.':
            advance();
            return make(TokenKind::punctuation);
        case '?': case ':':
            advance();
            return make(TokenKind::op);
        default:
            break;
        }
        for (auto op : kOperators) {
            if (src_.substr(pos_, op.size()) == op) {
                for (std::size_t i = 0; i < op.size(); ++i) advance();
                return make(TokenKind::op);
            }
        }
        std::string shown = (static_cast<unsigned char>(c) >= 0x20 && static_cast<unsigned char>(c) < 0x7f)
                                ? std::string(1, c)
                                : "byte 0x" + hex_byte(static_cast<unsigned char>(c));
        fail("illegal character '" + shown + "'");
    }

    void scan_string() {
        char quote = src_[pos_];
        advance();
        while (true) {
            if (pos_ >= src_.size() || src_[pos_] == '\n') fail("unterminated string literal");
            char c = src_[pos_];
            if (c == '\\') {
                advance();
                if (pos_ >= src_.size()) fail("unterminated string literal");
                advance();
                continue;
            }
            advance();
            if (c == quote) break;
        }
    }

    void scan_number() {
        if (src_[pos_] == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
            advance();
            advance();
            if (!is_hex(peek(0))) fail("malformed hex literal");
            while (pos_ < src_.size() && (is_hex(src_[pos_]) || src_[pos_] == '_')) advance();
        } else {
            while (pos_ < src_.size() && (is_digit(src_[pos_]) || src_[pos_] == '_')) advance();
            if (peek(0) == '.' && is_digit(peek(1))) {
                advance();
                while (pos_ < src_.size() && (is_digit(src_[pos_]) || src_[pos_] == '_')) advance();
            }
            if ((peek(0) == 'e' || peek(0) == 'E') &&
                (is_digit(peek(1)) || (peek(1) == '-' && is_digit(peek(2))))) {
                advance();
                if (peek(0) == '-') advance();
                while (pos_ < src_.size() && is_digit(src_[pos_])) advance();
            }
        }
        if (pos_ < src_.size() && is_ident_char(src_[pos_])) fail("malformed number literal");
    }

    static std::string hex_byte(unsigned char b) {
        const char* digits = "0123456789abcdef";
        return {digits[b >> 4], digits[b & 0xf]};
    }

    char peek(std::size_t ahead) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    Token make(TokenKind kind) const {
        Token t;
        t.kind = kind;
        t.lexeme = std::string(src_.substr(begin_, pos_ - begin_));
        t.span = Span{static_cast<std::uint32_t>(begin_), static_cast<std::uint32_t>(pos_), begin_line_,
                      begin_col_};
        return t;
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw LexError(begin_line_, begin_col_, message);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t begin_ = 0;
    std::uint32_t line_ = 1;
    std::uint32_t col_ = 1;
    std::uint32_t begin_line_ = 1;
    std::uint32_t begin_col_ = 1;
};

} // namespace

const char* to_string(TokenKind kind) {
    switch (kind) {
    case TokenKind::identifier: return "identifier";
    case TokenKind::number_literal: return "number-literal";
    case TokenKind::string_literal: return "string-literal";
    case TokenKind::unit_suffix: return "unit-suffix";
    case TokenKind::keyword: return "keyword";
    case TokenKind::op: return "operator";
    case TokenKind::punctuation: return "punctuation";
    case TokenKind::comment: return "comment";
    case TokenKind::whitespace: return "whitespace";
    }
    return "?";
}

std::vector<Token> tokenize(std::string_view source) { return Scanner(source).run(); }

std::vector<Token> significant_tokens(std::span<const Token> tokens) {
    std::vector<Token> out;
    for (const auto& t : tokens)
        if (!t.is_trivia()) out.push_back(t);
    return out;
}

bool is_ether_unit(std::string_view word) { return table_contains(UnitTable::ether_units, word); }
bool is_time_unit(std::string_view word) { return table_contains(UnitTable::time_units, word); }
bool is_unit_suffix(std::string_view word) { return is_ether_unit(word) || is_time_unit(word); }

bool is_elementary_type_name(std::string_view w) {
    if (w == "address" || w == "bool" || w == "string" || w == "bytes" || w == "byte" ||
        w == "uint" || w == "int" || w == "fixed" || w == "ufixed")
        return true;
    auto sized = [&](std::string_view prefix, int lo, int hi, int step) {
        if (!w.starts_with(prefix)) return false;
        auto rest = w.substr(prefix.size());
        if (!all_digits(rest) || rest.front() == '0') return false;
        int n = std::stoi(std::string(rest));
        return n >= lo && n <= hi && n % step == 0;
    };
    if (sized("uint", 8, 256, 8) || sized("int", 8, 256, 8) || sized("bytes", 1, 32, 1)) return true;
    for (std::string_view prefix : {"ufixed", "fixed"}) {
        if (!w.starts_with(prefix)) continue;
        auto rest = w.substr(prefix.size());
        auto x = rest.find('x');
        if (x == std::string_view::npos) return false;
        return all_digits(rest.substr(0, x)) && all_digits(rest.substr(x + 1));
    }
    return false;
}

bool is_keyword(std::string_view word) {
    return std::find(std::begin(kKeywords), std::end(kKeywords), word) != std::end(kKeywords) ||
           is_elementary_type_name(word);
}

} // namespace solmut
