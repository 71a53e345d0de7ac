#include "algorec/code_model/extractor.hpp"

#include <algorithm>
#include <set>

#include "algorec/code_model/lexer.hpp"

namespace algorec::code_model {

namespace {

struct Unbalanced {};

class Extractor {
public:
    Extractor(std::string_view text, const std::string& path, ExtractResult& out)
        : text_(text), path_(path), out_(out) {
        LexResult lex = tokenize(text);
        all_ = std::move(lex.tokens);
        for (auto& w : lex.warnings) {
            out_.warnings.push_back(path + ": " + w);
        }
        for (std::size_t i = 0; i < all_.size(); ++i) {
            if (!all_[i].is_trivia()) {
                sig_.push_back(i);
            }
        }
    }

    void run() {
        try {
            type_body(false, false);
            if (!eof()) {
                // Stray closing brace at top level.
                throw Unbalanced{};
            }
        } catch (const Unbalanced&) {
            ++out_.skipped_regions;
            out_.warnings.push_back(path_ + ": unbalanced braces, skipped remainder of file");
        }
    }

private:
    bool eof() const { return p_ >= sig_.size(); }
    const Token& tok(std::size_t k = 0) const {
        static const Token kEnd{TokenKind::whitespace, "", 0};
        return p_ + k < sig_.size() ? all_[sig_[p_ + k]] : kEnd;
    }
    bool punct(std::string_view t, std::size_t k = 0) const {
        return tok(k).is(TokenKind::punctuation, t);
    }

    /// Skips a balanced (), [] or {} group starting at the current opener.
    void skip_group() {
        std::vector<std::string> stack;
        do {
            if (eof()) {
                throw Unbalanced{};
            }
            const Token& t = tok();
            if (t.kind == TokenKind::punctuation) {
                if (t.text == "(" || t.text == "[" || t.text == "{") {
                    stack.push_back(t.text);
                } else if (t.text == ")" || t.text == "]" || t.text == "}") {
                    if (stack.empty()) {
                        throw Unbalanced{};
                    }
                    const std::string& open = stack.back();
                    const bool match = (open == "(" && t.text == ")") ||
                                       (open == "[" && t.text == "]") ||
                                       (open == "{" && t.text == "}");
                    if (!match && (t.text == "}" || open == "{")) {
                        throw Unbalanced{};
                    }
                    stack.pop_back();
                }
            }
            ++p_;
        } while (!stack.empty());
    }

    void skip_annotation() {
        ++p_;  // '@'
        while (tok().kind == TokenKind::identifier && punct(".", 1)) {
            p_ += 2;
        }
        if (tok().kind == TokenKind::identifier) {
            ++p_;
        }
        if (punct("(")) {
            skip_group();
        }
    }

    /// Scans members until the closing '}' (consumed) of a type body, or
    /// until end of input at top level.
    void type_body(bool nested, bool is_enum) {
        if (is_enum) {
            enum_constants();
        }
        for (;;) {
            if (eof()) {
                if (nested) {
                    throw Unbalanced{};
                }
                return;
            }
            if (punct("}")) {
                if (!nested) {
                    return;
                }
                ++p_;
                return;
            }
            member();
        }
    }

    void enum_constants() {
        for (;;) {
            while (punct("@")) {
                skip_annotation();
            }
            if (punct(";")) {
                ++p_;
                return;
            }
            if (punct("}") || eof()) {
                return;
            }
            if (tok().kind != TokenKind::identifier) {
                return;  // not a constant list; treat the rest as members
            }
            ++p_;
            if (punct("(")) {
                skip_group();
            }
            if (punct("{")) {
                ++p_;
                type_body(true, false);
            }
            if (punct(",")) {
                ++p_;
            }
        }
    }

    void member() {
        const std::size_t start = p_;
        bool type_decl = false;
        bool is_enum = false;
        for (;;) {
            if (eof()) {
                throw Unbalanced{};
            }
            const Token& t = tok();
            if (t.is(TokenKind::punctuation, ";")) {
                ++p_;
                return;
            }
            if (t.is(TokenKind::punctuation, "}")) {
                if (p_ == start) {
                    throw Unbalanced{};
                }
                return;  // member without terminator; let the body close
            }
            if (t.is(TokenKind::punctuation, "@")) {
                if (tok(1).is(TokenKind::keyword, "interface")) {
                    type_decl = true;
                    p_ += 2;
                    continue;
                }
                skip_annotation();
                continue;
            }
            if (t.kind == TokenKind::keyword &&
                (t.text == "class" || t.text == "interface" || t.text == "enum")) {
                type_decl = true;
                is_enum = t.text == "enum";
                ++p_;
                continue;
            }
            if (t.is(TokenKind::identifier, "record") &&
                tok(1).kind == TokenKind::identifier && !type_decl) {
                type_decl = true;
                ++p_;
                continue;
            }
            if (t.is(TokenKind::op, "=")) {
                skip_initializer();
                return;
            }
            if (t.is(TokenKind::punctuation, "{")) {
                ++p_;
                if (type_decl) {
                    type_body(true, is_enum);
                } else {
                    // Initializer block.
                    --p_;
                    skip_group();
                }
                return;
            }
            if (t.is(TokenKind::punctuation, "(")) {
                if (type_decl) {
                    skip_group();  // record components
                    continue;
                }
                const std::size_t open = p_;
                if (open == start || all_[sig_[open - 1]].kind != TokenKind::identifier) {
                    skip_group();
                    continue;
                }
                skip_group();
                while (punct("[") && punct("]", 1)) {
                    p_ += 2;
                }
                if (tok().is(TokenKind::keyword, "throws")) {
                    while (!eof() && !punct("{") && !punct(";") && !punct("}")) {
                        ++p_;
                    }
                }
                if (tok().is(TokenKind::keyword, "default")) {
                    // Annotation member default value.
                    while (!eof() && !punct(";") && !punct("}")) {
                        if (punct("{") || punct("(")) {
                            skip_group();
                        } else {
                            ++p_;
                        }
                    }
                }
                if (punct(";")) {
                    ++p_;
                    return;
                }
                if (punct("{")) {
                    skip_group();
                    emit(start, open - 1, p_);
                    return;
                }
                continue;
            }
            if (t.kind == TokenKind::punctuation && t.text == "[") {
                skip_group();
                continue;
            }
            ++p_;
        }
    }

    void skip_initializer() {
        for (;;) {
            if (eof()) {
                throw Unbalanced{};
            }
            if (punct(";")) {
                ++p_;
                return;
            }
            if (punct("}")) {
                return;
            }
            if (punct("(") || punct("[") || punct("{")) {
                skip_group();
                continue;
            }
            ++p_;
        }
    }

    void emit(std::size_t first_sig, std::size_t name_sig, std::size_t end_sig) {
        const Token& first = all_[sig_[first_sig]];
        const Token& last = all_[sig_[end_sig - 1]];
        const std::size_t begin = first.offset;
        const std::size_t end = last.offset + last.text.size();
        const std::string name = all_[sig_[name_sig]].text;
        const auto line =
            1 + static_cast<std::size_t>(std::count(text_.begin(), text_.begin() + begin, '\n'));
        std::string id = make_method_id(path_, line, name);
        if (!ids_.insert(id).second) {
            std::size_t k = 2;
            while (!ids_.insert(id + "#" + std::to_string(k)).second) {
                ++k;
            }
            id += "#" + std::to_string(k);
        }
        MethodRecord record =
            make_record(std::move(id), path_, name, std::string(text_.substr(begin, end - begin)));
        for (const auto& w : record.warnings) {
            out_.warnings.push_back(record.method_id + ": " + w);
        }
        out_.records.push_back(std::move(record));
    }

    std::string_view text_;
    const std::string& path_;
    ExtractResult& out_;
    TokenStream all_;
    std::vector<std::size_t> sig_;
    std::size_t p_ = 0;
    std::set<std::string> ids_;
};

}  // namespace

ExtractResult extract_methods(std::string_view file_text, const std::string& file_path) {
    ExtractResult result;
    Extractor(file_text, file_path, result).run();
    return result;
}

}  // namespace algorec::code_model
