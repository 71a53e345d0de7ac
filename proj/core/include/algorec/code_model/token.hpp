#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace algorec::code_model {

enum class TokenKind {
    identifier,
    keyword,
    op,
    literal_number,
    literal_string,
    literal_char,
    punctuation,
    comment,
    whitespace,
};

std::string_view to_string(TokenKind kind);

struct Token {
    TokenKind kind;
    std::string text;
    std::size_t offset = 0;  ///< byte offset into the lexed source

    bool is_trivia() const { return kind == TokenKind::whitespace || kind == TokenKind::comment; }
    bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }

    friend bool operator==(const Token&, const Token&) = default;
};

using TokenStream = std::vector<Token>;

/// Java reserved words, including the reserved literals true/false/null.
bool is_java_keyword(std::string_view word);

bool is_primitive_type(std::string_view word);

}  // namespace algorec::code_model
