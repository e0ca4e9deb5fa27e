#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "solmut/span.hpp"

namespace solmut {

enum class TokenKind {
    identifier,
    number_literal,
    string_literal,
    unit_suffix,
    keyword,
    op,          // operators, including assignment forms
    punctuation, // ( ) [ ] { } ; , .
    comment,
    whitespace,
};

const char* to_string(TokenKind kind);

struct Token {
    TokenKind kind = TokenKind::identifier;
    std::string lexeme;
    Span span;

    [[nodiscard]] bool is_trivia() const {
        return kind == TokenKind::comment || kind == TokenKind::whitespace;
    }
    [[nodiscard]] bool is(TokenKind k, std::string_view text) const {
        return kind == k && lexeme == text;
    }
};

/// Full token stream, trivia included. Throws LexError.
std::vector<Token> tokenize(std::string_view source);

/// The tokens of `tokens` that are not comments or whitespace.
std::vector<Token> significant_tokens(std::span<const Token> tokens);

bool is_unit_suffix(std::string_view word);
bool is_ether_unit(std::string_view word);
bool is_time_unit(std::string_view word);
bool is_keyword(std::string_view word);

/// uintN, intN, bytesN, fixedMxN, address, bool, string, bytes, byte.
bool is_elementary_type_name(std::string_view word);

} // namespace solmut
