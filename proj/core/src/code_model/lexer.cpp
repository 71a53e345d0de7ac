#include "algorec/code_model/lexer.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <array>
#include <unordered_set>

#include "algorec/errors.hpp"

namespace algorec::code_model {

std::string_view to_string(TokenKind kind) {
    switch (kind) {
        case TokenKind::identifier: return "identifier";
        case TokenKind::keyword: return "keyword";
        case TokenKind::op: return "operator";
        case TokenKind::literal_number: return "literal-number";
        case TokenKind::literal_string: return "literal-string";
        case TokenKind::literal_char: return "literal-char";
        case TokenKind::punctuation: return "punctuation";
        case TokenKind::comment: return "comment";
        case TokenKind::whitespace: return "whitespace";
    }
    return "?";
}

bool is_java_keyword(std::string_view word) {
    static const std::unordered_set<std::string_view> kKeywords = {
        "abstract", "assert",     "boolean",   "break",     "byte",         "case",
        "catch",    "char",       "class",     "const",     "continue",     "default",
        "do",       "double",     "else",      "enum",      "extends",      "final",
        "finally",  "float",      "for",       "goto",      "if",           "implements",
        "import",   "instanceof", "int",       "interface", "long",         "native",
        "new",      "package",    "private",   "protected", "public",       "return",
        "short",    "static",     "strictfp",  "super",     "switch",       "synchronized",
        "this",     "throw",      "throws",    "transient", "try",          "void",
        "volatile", "while",      "_",         "true",      "false",        "null",
    };
    return kKeywords.contains(word);
}

bool is_primitive_type(std::string_view word) {
    static constexpr std::array<std::string_view, 9> kPrimitives = {
        "boolean", "byte", "char", "short", "int", "long", "float", "double", "void"};
    return std::find(kPrimitives.begin(), kPrimitives.end(), word) != kPrimitives.end();
}

std::size_t find_invalid_utf8(std::string_view bytes) {
    std::size_t i = 0;
    const std::size_t n = bytes.size();
    while (i < n) {
        const auto c = static_cast<unsigned char>(bytes[i]);
        std::size_t len = 0;
        std::uint32_t cp = 0;
        if (c < 0x80) {
            ++i;
            continue;
        } else if ((c & 0xE0) == 0xC0) {
            len = 2;
            cp = c & 0x1F;
        } else if ((c & 0xF0) == 0xE0) {
            len = 3;
            cp = c & 0x0F;
        } else if ((c & 0xF8) == 0xF0) {
            len = 4;
            cp = c & 0x07;
        } else {
            return i;
        }
        if (i + len > n) {
            return i;
        }
        for (std::size_t k = 1; k < len; ++k) {
            const auto cc = static_cast<unsigned char>(bytes[i + k]);
            if ((cc & 0xC0) != 0x80) {
                return i;
            }
            cp = (cp << 6) | (cc & 0x3F);
        }
        // Overlong forms, surrogates and out-of-range code points.
        if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
            cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
            return i;
        }
        i += len;
    }
    return std::string_view::npos;
}

namespace {

bool is_ident_start(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' || c >= 0x80;
}

bool is_ident_part(unsigned char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }

bool is_space(unsigned char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// Longest first.
constexpr std::array<std::string_view, 38> kOperators = {
    ">>>=", "<<=", ">>=", ">>>", "->", "++", "--", "&&", "||", "==", "!=", "<=",
    ">=",   "+=",  "-=",  "*=",  "/=",  "%=", "&=", "|=", "^=", "<<", ">>", "=",  ">",  "<",
    "!",    "~",   "?",   ":",   "+",   "-",  "*",  "/",  "&",  "|",  "^",  "%",
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    LexResult run() {
        while (pos_ < src_.size()) {
            lex_one();
        }
        return std::move(out_);
    }

private:
    unsigned char at(std::size_t i) const {
        return i < src_.size() ? static_cast<unsigned char>(src_[i]) : 0;
    }

    void emit(TokenKind kind, std::size_t begin) {
        out_.tokens.push_back(Token{kind, std::string(src_.substr(begin, pos_ - begin)), begin});
    }

    void lex_one() {
        const std::size_t begin = pos_;
        const unsigned char c = at(pos_);

        if (is_space(c)) {
            while (pos_ < src_.size() && is_space(at(pos_))) {
                ++pos_;
            }
            emit(TokenKind::whitespace, begin);
        } else if (c == '/' && at(pos_ + 1) == '/') {
            while (pos_ < src_.size() && at(pos_) != '\n' && at(pos_) != '\r') {
                ++pos_;
            }
            emit(TokenKind::comment, begin);
        } else if (c == '/' && at(pos_ + 1) == '*') {
            const auto end = src_.find("*/", pos_ + 2);
            if (end == std::string_view::npos) {
                pos_ = src_.size();
                warn("unterminated block comment", begin);
            } else {
                pos_ = end + 2;
            }
            emit(TokenKind::comment, begin);
        } else if (c == '"') {
            lex_string(begin);
        } else if (c == '\'') {
            lex_quoted('\'', begin, "character literal");
            emit(TokenKind::literal_char, begin);
        } else if (is_digit(c) || (c == '.' && is_digit(at(pos_ + 1)))) {
            lex_number();
            emit(TokenKind::literal_number, begin);
        } else if (is_ident_start(c)) {
            while (pos_ < src_.size() && is_ident_part(at(pos_))) {
                ++pos_;
            }
            const auto word = src_.substr(begin, pos_ - begin);
            emit(is_java_keyword(word) ? TokenKind::keyword : TokenKind::identifier, begin);
        } else {
            lex_symbol(begin);
        }
    }

    void lex_string(std::size_t begin) {
        if (src_.substr(pos_, 3) == "\"\"\"") {
            pos_ += 3;
            while (pos_ < src_.size()) {
                if (at(pos_) == '\\') {
                    pos_ += 2;
                } else if (src_.substr(pos_, 3) == "\"\"\"") {
                    pos_ += 3;
                    emit(TokenKind::literal_string, begin);
                    return;
                } else {
                    ++pos_;
                }
            }
            pos_ = src_.size();
            warn("unterminated text block", begin);
            emit(TokenKind::literal_string, begin);
            return;
        }
        lex_quoted('"', begin, "string literal");
        emit(TokenKind::literal_string, begin);
    }

    void lex_quoted(char quote, std::size_t begin, const char* what) {
        ++pos_;
        while (pos_ < src_.size()) {
            const unsigned char c = at(pos_);
            if (c == '\\') {
                pos_ = std::min(pos_ + 2, src_.size());
            } else if (c == static_cast<unsigned char>(quote)) {
                ++pos_;
                return;
            } else {
                ++pos_;
            }
        }
        warn(std::string("unterminated ") + what, begin);
    }

    void lex_number() {
        auto consume = [&](auto pred) {
            while (pos_ < src_.size() && pred(at(pos_))) {
                ++pos_;
            }
        };
        const bool hex = at(pos_) == '0' && (at(pos_ + 1) == 'x' || at(pos_ + 1) == 'X');
        const bool bin = at(pos_) == '0' && (at(pos_ + 1) == 'b' || at(pos_ + 1) == 'B');
        if (hex) {
            pos_ += 2;
            consume([](unsigned char c) { return std::isxdigit(c) || c == '_' || c == '.'; });
            if (at(pos_) == 'p' || at(pos_) == 'P') {
                ++pos_;
                if (at(pos_) == '+' || at(pos_) == '-') {
                    ++pos_;
                }
                consume([](unsigned char c) { return is_digit(c) || c == '_'; });
            }
        } else if (bin) {
            pos_ += 2;
            consume([](unsigned char c) { return c == '0' || c == '1' || c == '_'; });
        } else {
            consume([](unsigned char c) { return is_digit(c) || c == '_'; });
            if (at(pos_) == '.' && at(pos_ + 1) != '.') {
                ++pos_;
                consume([](unsigned char c) { return is_digit(c) || c == '_'; });
            }
            if ((at(pos_) == 'e' || at(pos_) == 'E') &&
                (is_digit(at(pos_ + 1)) ||
                 ((at(pos_ + 1) == '+' || at(pos_ + 1) == '-') && is_digit(at(pos_ + 2))))) {
                pos_ += 2;
                consume([](unsigned char c) { return is_digit(c) || c == '_'; });
            }
        }
        const unsigned char s = at(pos_);
        if (s == 'l' || s == 'L' || s == 'f' || s == 'F' || s == 'd' || s == 'D') {
            ++pos_;
        }
    }

    void lex_symbol(std::size_t begin) {
        static constexpr std::string_view kPunct = "(){}[];,.@";
        if (src_.substr(pos_, 3) == "..." ) {
            pos_ += 3;
            emit(TokenKind::punctuation, begin);
            return;
        }
        if (src_.substr(pos_, 2) == "::") {
            pos_ += 2;
            emit(TokenKind::punctuation, begin);
            return;
        }
        if (kPunct.find(src_[pos_]) != std::string_view::npos) {
            ++pos_;
            emit(TokenKind::punctuation, begin);
            return;
        }
        for (auto op : kOperators) {
            if (src_.substr(pos_, op.size()) == op) {
                pos_ += op.size();
                emit(TokenKind::op, begin);
                return;
            }
        }
        ++pos_;
        warn("unexpected character", begin);
        emit(TokenKind::punctuation, begin);
    }

    void warn(std::string what, std::size_t offset) {
        out_.warnings.push_back(what + " at offset " + std::to_string(offset));
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    LexResult out_;
};

}  // namespace

LexResult tokenize(std::string_view source) {
    if (const auto bad = find_invalid_utf8(source); bad != std::string_view::npos) {
        throw EncodingError("malformed UTF-8 at byte offset " + std::to_string(bad));
    }
    return Lexer(source).run();
}

}  // namespace algorec::code_model
