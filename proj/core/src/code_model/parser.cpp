#include "algorec/code_model/parser.hpp"

#include <array>
#include <functional>

#include "algorec/code_model/method_record.hpp"

namespace algorec::code_model {

namespace {

struct ParseFailure {
    std::string what;
};

bool is_modifier(std::string_view w) {
    static constexpr std::array<std::string_view, 13> kModifiers = {
        "public",   "private", "protected",    "static",   "final",     "abstract", "native",
        "strictfp", "default", "synchronized", "volatile", "transient", "sealed"};
    for (auto m : kModifiers) {
        if (m == w) {
            return true;
        }
    }
    return false;
}

bool is_assign_op(std::string_view t) {
    return t == "=" || t == "+=" || t == "-=" || t == "*=" || t == "/=" || t == "%=" || t == "&=" ||
           t == "|=" || t == "^=" || t == "<<=" || t == ">>=" || t == ">>>=";
}

int binary_precedence(std::string_view t) {
    if (t == "||") return 1;
    if (t == "&&") return 2;
    if (t == "|") return 3;
    if (t == "^") return 4;
    if (t == "&") return 5;
    if (t == "==" || t == "!=") return 6;
    if (t == "<" || t == ">" || t == "<=" || t == ">=" || t == "instanceof") return 7;
    if (t == "<<" || t == ">>" || t == ">>>") return 8;
    if (t == "+" || t == "-") return 9;
    if (t == "*" || t == "/" || t == "%") return 10;
    return 0;
}

bool wordish(const Token& t) {
    return t.kind == TokenKind::identifier || t.kind == TokenKind::keyword ||
           t.kind == TokenKind::literal_number;
}

class Parser {
public:
    Parser(const TokenStream& tokens, std::string_view method_name)
        : all_(tokens), method_name_(method_name) {
        for (std::size_t i = 0; i < all_.size(); ++i) {
            if (!all_[i].is_trivia()) {
                sig_.push_back(i);
            }
        }
    }

    ParseResult run() {
        ParseResult result;
        try {
            AstNode method = parse_method_decl(true);
            if (!eof()) {
                throw ParseFailure{"trailing tokens after method body"};
            }
            result.ast = std::move(method);
            result.recovered_statements = recovered_;
        } catch (const ParseFailure& f) {
            result.failure = f.what;
        }
        return result;
    }

private:
    // ---- token access -------------------------------------------------

    bool eof(std::size_t k = 0) const { return p_ + k >= sig_.size(); }

    const Token& tok(std::size_t k = 0) const {
        static const Token kEnd{TokenKind::whitespace, "", 0};
        return eof(k) ? kEnd : all_[sig_[p_ + k]];
    }

    bool punct(std::string_view t, std::size_t k = 0) const {
        return tok(k).is(TokenKind::punctuation, t);
    }
    bool op(std::string_view t, std::size_t k = 0) const { return tok(k).is(TokenKind::op, t); }
    bool kw(std::string_view t, std::size_t k = 0) const { return tok(k).is(TokenKind::keyword, t); }
    bool ident(std::size_t k = 0) const { return tok(k).kind == TokenKind::identifier; }
    bool ident_text(std::string_view t, std::size_t k = 0) const {
        return tok(k).is(TokenKind::identifier, t);
    }

    void expect_punct(std::string_view t) {
        if (!punct(t)) {
            fail("expected '" + std::string(t) + "'");
        }
        ++p_;
    }

    [[noreturn]] void fail(const std::string& what) const {
        std::string where = eof() ? std::string("end of input")
                                  : "'" + tok().text + "' at offset " + std::to_string(tok().offset);
        throw ParseFailure{what + " near " + where};
    }

    Span span_of(std::size_t first_sig, std::size_t end_sig) const {
        if (end_sig <= first_sig) {
            const auto off = first_sig < sig_.size() ? all_[sig_[first_sig]].offset : 0;
            return {off, off};
        }
        const Token& a = all_[sig_[first_sig]];
        const Token& b = all_[sig_[end_sig - 1]];
        return {a.offset, b.offset + b.text.size()};
    }

    std::string compact(std::size_t first_sig, std::size_t end_sig) const {
        std::string out;
        const Token* prev = nullptr;
        for (std::size_t i = first_sig; i < end_sig && i < sig_.size(); ++i) {
            const Token& t = all_[sig_[i]];
            if (prev && wordish(*prev) && wordish(t)) {
                out.push_back(' ');
            }
            out += t.text;
            prev = &t;
        }
        return out;
    }

    AstNode make(NodeKind kind, std::size_t first_sig) const {
        AstNode n;
        n.kind = kind;
        n.span = span_of(first_sig, p_);
        return n;
    }

    AstNode make_other(std::string name, std::size_t first_sig) const {
        AstNode n = make(NodeKind::other, first_sig);
        n.attrs["name"] = std::move(name);
        n.compact_text = compact(first_sig, p_);
        return n;
    }

    static AstNode with_role(AstNode n, Role r) {
        n.role = r;
        return n;
    }

    // ---- skipping helpers ----------------------------------------------

    void skip_balanced(std::string_view open, std::string_view close) {
        int depth = 0;
        do {
            if (eof()) {
                fail("unbalanced '" + std::string(open) + "'");
            }
            if (punct(open)) {
                ++depth;
            } else if (punct(close)) {
                --depth;
            }
            ++p_;
        } while (depth > 0);
    }

    void skip_annotation() {
        ++p_;  // '@'
        if (kw("interface")) {
            fail("annotation type declaration");
        }
        if (!ident()) {
            fail("expected annotation name");
        }
        ++p_;
        while (punct(".") && ident(1)) {
            p_ += 2;
        }
        if (punct("(")) {
            skip_balanced("(", ")");
        }
    }

    void skip_annotations_and_modifiers() {
        for (;;) {
            if (punct("@") && !kw("interface", 1)) {
                skip_annotation();
            } else if ((tok().kind == TokenKind::keyword || ident()) && is_modifier(tok().text) &&
                       !punct("(", 1) && !punct(".", 1)) {
                ++p_;
            } else {
                return;
            }
        }
    }

    /// Skips `<...>` type arguments starting at position `q`; returns the
    /// position after the closing bracket or npos when the tokens cannot be
    /// type arguments.
    std::size_t scan_type_args(std::size_t q) const {
        if (!(q < sig_.size() && all_[sig_[q]].is(TokenKind::op, "<"))) {
            return q;
        }
        int depth = 0;
        while (q < sig_.size()) {
            const Token& t = all_[sig_[q]];
            if (t.kind == TokenKind::op) {
                if (t.text == "<") {
                    ++depth;
                } else if (t.text == ">") {
                    depth -= 1;
                } else if (t.text == ">>") {
                    depth -= 2;
                } else if (t.text == ">>>") {
                    depth -= 3;
                } else if (t.text != "?" && t.text != "&") {
                    return std::string_view::npos;
                }
            } else if (t.kind == TokenKind::punctuation) {
                if (t.text != "." && t.text != "," && t.text != "[" && t.text != "]" &&
                    t.text != "@") {
                    return std::string_view::npos;
                }
            } else if (t.kind == TokenKind::keyword) {
                if (t.text != "extends" && t.text != "super" && !is_primitive_type(t.text)) {
                    return std::string_view::npos;
                }
            } else if (t.kind != TokenKind::identifier) {
                return std::string_view::npos;
            }
            ++q;
            if (depth < 0) {
                return std::string_view::npos;
            }
            if (depth == 0) {
                return q;
            }
        }
        return std::string_view::npos;
    }

    /// Scans a type at `q` (primitive, or qualified name with type arguments,
    /// followed by array dimensions). Returns the position after it or npos.
    std::size_t scan_type(std::size_t q) const {
        auto at = [&](std::size_t i) -> const Token& {
            static const Token kEnd{TokenKind::whitespace, "", 0};
            return i < sig_.size() ? all_[sig_[i]] : kEnd;
        };
        while (at(q).is(TokenKind::punctuation, "@")) {
            return std::string_view::npos;
        }
        if (at(q).kind == TokenKind::keyword && is_primitive_type(at(q).text)) {
            ++q;
        } else if (at(q).kind == TokenKind::identifier) {
            ++q;
            q = scan_type_args(q);
            if (q == std::string_view::npos) {
                return q;
            }
            while (at(q).is(TokenKind::punctuation, ".") && at(q + 1).kind == TokenKind::identifier) {
                q = scan_type_args(q + 2);
                if (q == std::string_view::npos) {
                    return q;
                }
            }
        } else {
            return std::string_view::npos;
        }
        while (at(q).is(TokenKind::punctuation, "[") && at(q + 1).is(TokenKind::punctuation, "]")) {
            q += 2;
        }
        if (at(q).is(TokenKind::punctuation, "...")) {
            ++q;
        }
        return q;
    }

    void skip_type() {
        const auto q = scan_type(p_);
        if (q == std::string_view::npos) {
            fail("expected type");
        }
        p_ = q;
    }

    bool looks_like_local_var_decl() const {
        std::size_t save = p_;
        auto* self = const_cast<Parser*>(this);
        bool result = false;
        try {
            self->skip_annotations_and_modifiers();
            if (ident_text("var") && ident(1)) {
                result = true;
            } else {
                const auto q = scan_type(p_);
                if (q != std::string_view::npos && q < sig_.size() &&
                    all_[sig_[q]].kind == TokenKind::identifier) {
                    const Token& next = q + 1 < sig_.size() ? all_[sig_[q + 1]] : all_[sig_[q]];
                    result = q + 1 >= sig_.size() || next.is(TokenKind::op, "=") ||
                             next.is(TokenKind::punctuation, ";") ||
                             next.is(TokenKind::punctuation, ",") ||
                             next.is(TokenKind::punctuation, "[") || next.is(TokenKind::op, ":");
                }
            }
        } catch (const ParseFailure&) {
            result = false;
        }
        self->p_ = save;
        return result;
    }

    // ---- declarations --------------------------------------------------

    AstNode parse_method_decl(bool top_level) {
        const std::size_t start = p_;
        skip_annotations_and_modifiers();
        if (op("<")) {
            const auto q = scan_type_args(p_);
            if (q == std::string_view::npos) {
                fail("malformed type parameters");
            }
            p_ = q;
            skip_annotations_and_modifiers();
        }
        // The name is the identifier right before the first '(' of the header.
        std::size_t q = p_;
        while (q < sig_.size()) {
            const Token& t = all_[sig_[q]];
            if (t.is(TokenKind::punctuation, "(")) {
                break;
            }
            if (t.is(TokenKind::punctuation, "{") || t.is(TokenKind::punctuation, ";") ||
                t.is(TokenKind::op, "=") || t.is(TokenKind::punctuation, "}")) {
                fail("no method header");
            }
            ++q;
        }
        if (q >= sig_.size() || q == p_ || all_[sig_[q - 1]].kind != TokenKind::identifier) {
            fail("no method header");
        }
        if (q - 1 > p_ && scan_type(p_) != q - 1) {
            fail("malformed return type");
        }
        AstNode method;
        method.kind = NodeKind::method;
        const std::string name = all_[sig_[q - 1]].text;
        method.attrs["name"] = name;
        if (top_level && method_name_.empty()) {
            method_name_ = name;
        }
        p_ = q;
        parse_parameters(method.children);
        while (punct("[") && punct("]", 1)) {
            p_ += 2;
        }
        if (kw("throws")) {
            ++p_;
            while (!eof() && !punct("{") && !punct(";")) {
                ++p_;
            }
        }
        if (!punct("{")) {
            fail("method has no body");
        }
        method.children.push_back(parse_block());
        method.span = span_of(start, p_);
        return method;
    }

    void parse_parameters(std::vector<AstNode>& out) {
        expect_punct("(");
        while (!punct(")")) {
            if (eof()) {
                fail("unterminated parameter list");
            }
            const std::size_t start = p_;
            skip_annotations_and_modifiers();
            if (ident() && punct(".", 1) && kw("this", 2)) {
                // receiver parameter: Type Outer.this
            }
            skip_type();
            if (kw("this")) {
                ++p_;
            } else if (ident()) {
                AstNode decl;
                decl.kind = NodeKind::var_decl;
                decl.attrs["name"] = tok().text;
                ++p_;
                while (punct("[") && punct("]", 1)) {
                    p_ += 2;
                }
                decl.span = span_of(start, p_);
                out.push_back(std::move(decl));
            } else {
                fail("expected parameter name");
            }
            if (punct(",")) {
                ++p_;
            } else if (!punct(")")) {
                fail("expected ',' or ')' in parameter list");
            }
        }
        ++p_;
    }

    /// Declarators after the type: `a = 1, b[] = {..}, c`.
    void parse_declarators(std::size_t type_start, std::vector<AstNode>& out) {
        bool first = true;
        for (;;) {
            if (!ident()) {
                fail("expected variable name");
            }
            const std::size_t start = first ? type_start : p_;
            AstNode decl;
            decl.kind = NodeKind::var_decl;
            decl.attrs["name"] = tok().text;
            ++p_;
            while (punct("[") && punct("]", 1)) {
                p_ += 2;
            }
            if (op("=")) {
                ++p_;
                decl.children.push_back(with_role(parse_var_init(), Role::source));
            }
            decl.span = span_of(start, p_);
            out.push_back(std::move(decl));
            first = false;
            if (punct(",")) {
                ++p_;
                continue;
            }
            return;
        }
    }

    AstNode parse_var_init() {
        if (punct("{")) {
            return parse_array_initializer();
        }
        return parse_expression();
    }

    AstNode parse_array_initializer() {
        const std::size_t start = p_;
        expect_punct("{");
        std::vector<AstNode> elems;
        while (!punct("}")) {
            if (eof()) {
                fail("unterminated array initializer");
            }
            elems.push_back(parse_var_init());
            if (punct(",")) {
                ++p_;
            } else if (!punct("}")) {
                fail("expected ',' or '}' in array initializer");
            }
        }
        ++p_;
        AstNode n = make_other("array-init", start);
        n.children = std::move(elems);
        return n;
    }

    void parse_local_var_decl(std::vector<AstNode>& out) {
        const std::size_t start = p_;
        skip_annotations_and_modifiers();
        if (ident_text("var") && ident(1)) {
            ++p_;
        } else {
            skip_type();
        }
        parse_declarators(start, out);
    }

    /// Members of an anonymous or local class body. Methods are parsed; other
    /// members are kept as opaque nodes.
    AstNode parse_class_body() {
        const std::size_t start = p_;
        expect_punct("{");
        std::vector<AstNode> members;
        while (!punct("}")) {
            if (eof()) {
                fail("unterminated class body");
            }
            if (punct(";")) {
                ++p_;
                continue;
            }
            const std::size_t member_start = p_;
            bool is_method = false;
            {
                std::size_t q = p_;
                int parens = 0;
                while (q < sig_.size()) {
                    const Token& t = all_[sig_[q]];
                    if (t.is(TokenKind::punctuation, "(")) {
                        is_method = parens == 0 && q > p_ &&
                                    all_[sig_[q - 1]].kind == TokenKind::identifier;
                        break;
                    }
                    if (t.is(TokenKind::punctuation, "{") || t.is(TokenKind::punctuation, ";") ||
                        t.is(TokenKind::op, "=") || t.is(TokenKind::punctuation, "}")) {
                        break;
                    }
                    ++q;
                }
            }
            if (is_method) {
                try {
                    members.push_back(parse_method_decl(false));
                    continue;
                } catch (const ParseFailure&) {
                    p_ = member_start;
                }
            }
            skip_member();
            AstNode opaque = make_other("member", member_start);
            members.push_back(std::move(opaque));
        }
        ++p_;
        AstNode n = make_other("class-body", start);
        n.children = std::move(members);
        return n;
    }

    void skip_member() {
        int depth = 0;
        while (!eof()) {
            if (punct("{")) {
                ++depth;
            } else if (punct("}")) {
                if (depth == 0) {
                    return;
                }
                if (--depth == 0) {
                    ++p_;
                    if (punct(";")) {
                        ++p_;
                    }
                    return;
                }
            } else if (punct(";") && depth == 0) {
                ++p_;
                return;
            }
            ++p_;
        }
    }

    // ---- statements ----------------------------------------------------

    AstNode parse_block() {
        const std::size_t start = p_;
        expect_punct("{");
        AstNode block;
        block.kind = NodeKind::block;
        while (!punct("}")) {
            if (eof()) {
                fail("unterminated block");
            }
            parse_statement_recovering(block.children);
        }
        ++p_;
        block.span = span_of(start, p_);
        return block;
    }

    void parse_statement_recovering(std::vector<AstNode>& out) {
        const std::size_t save = p_;
        std::vector<AstNode> tmp;
        try {
            parse_statement(tmp);
            for (auto& n : tmp) {
                out.push_back(std::move(n));
            }
        } catch (const ParseFailure&) {
            p_ = save;
            recover(out);
        }
    }

    /// Skips to the end of the current statement: the next ';' at depth 0,
    /// the end of a block opened inside the statement, or just before the
    /// '}' that closes the enclosing block.
    void recover(std::vector<AstNode>& out) {
        const std::size_t start = p_;
        int depth = 0;
        while (!eof()) {
            if (punct("{")) {
                ++depth;
            } else if (punct("}")) {
                if (depth == 0) {
                    break;
                }
                if (--depth == 0) {
                    ++p_;
                    break;
                }
            } else if (punct(";") && depth == 0) {
                ++p_;
                break;
            }
            ++p_;
        }
        if (p_ == start) {
            ++p_;  // always make progress
        }
        ++recovered_;
        AstNode err = make_other("error", start);
        err.attrs["error"] = "true";
        out.push_back(std::move(err));
    }

    AstNode parse_single_statement() {
        std::vector<AstNode> tmp;
        const std::size_t start = p_;
        parse_statement(tmp);
        if (tmp.size() == 1) {
            return std::move(tmp.front());
        }
        // Empty statement or a multi-declarator declaration as a loop body.
        AstNode block = make(NodeKind::block, start);
        block.children = std::move(tmp);
        return block;
    }

    void expect_semicolon() { expect_punct(";"); }

    void parse_statement(std::vector<AstNode>& out) {
        const std::size_t start = p_;
        if (punct("{")) {
            out.push_back(parse_block());
            return;
        }
        if (punct(";")) {
            ++p_;
            return;
        }
        if (tok().kind == TokenKind::keyword) {
            const std::string& k = tok().text;
            if (k == "if") return out.push_back(parse_if());
            if (k == "for") return out.push_back(parse_for());
            if (k == "while") return out.push_back(parse_while());
            if (k == "do") return out.push_back(parse_do());
            if (k == "return") {
                ++p_;
                AstNode ret;
                ret.kind = NodeKind::return_stmt;
                if (!punct(";")) {
                    ret.children.push_back(parse_expression());
                }
                expect_semicolon();
                ret.span = span_of(start, p_);
                return out.push_back(std::move(ret));
            }
            if (k == "break" || k == "continue") {
                ++p_;
                if (ident()) {
                    ++p_;
                }
                expect_semicolon();
                return out.push_back(make_other(k, start));
            }
            if (k == "throw") {
                ++p_;
                AstNode value = parse_expression();
                expect_semicolon();
                AstNode n = make_other("throw", start);
                n.children.push_back(std::move(value));
                return out.push_back(std::move(n));
            }
            if (k == "switch") {
                AstNode n = parse_switch();
                if (punct(";")) {
                    ++p_;
                }
                return out.push_back(std::move(n));
            }
            if (k == "try") return out.push_back(parse_try());
            if (k == "synchronized" && punct("(", 1)) {
                ++p_;
                expect_punct("(");
                AstNode lock = parse_expression();
                expect_punct(")");
                AstNode body = parse_block();
                AstNode n = make_other("synchronized", start);
                n.children.push_back(std::move(lock));
                n.children.push_back(std::move(body));
                return out.push_back(std::move(n));
            }
            if (k == "assert") {
                ++p_;
                AstNode n;
                std::vector<AstNode> parts;
                parts.push_back(parse_expression());
                if (op(":")) {
                    ++p_;
                    parts.push_back(parse_expression());
                }
                expect_semicolon();
                n = make_other("assert", start);
                n.children = std::move(parts);
                return out.push_back(std::move(n));
            }
            if (k == "class" || k == "interface" || k == "enum" ||
                ((k == "abstract" || k == "final" || k == "static") &&
                 (kw("class", 1) || kw("interface", 1) || kw("enum", 1)))) {
                return out.push_back(parse_local_class());
            }
        }
        if ((ident_text("record") || ident_text("enum")) && ident(1) &&
            (punct("(", 2) || punct("{", 2))) {
            return out.push_back(parse_local_class());
        }
        if (ident_text("yield") && !op("=", 1) && !punct("(", 1) && !punct(".", 1) &&
            !punct("[", 1) && !op("++", 1) && !op("--", 1)) {
            ++p_;
            AstNode value = parse_expression();
            expect_semicolon();
            AstNode n = make_other("yield", start);
            n.children.push_back(std::move(value));
            return out.push_back(std::move(n));
        }
        if (ident() && op(":", 1)) {
            p_ += 2;  // label
            parse_statement(out);
            return;
        }
        if (looks_like_local_var_decl()) {
            parse_local_var_decl(out);
            expect_semicolon();
            return;
        }
        AstNode expr = parse_expression();
        expect_semicolon();
        out.push_back(std::move(expr));
    }

    AstNode parse_local_class() {
        const std::size_t start = p_;
        while (!eof() && !punct("{")) {
            ++p_;
        }
        if (eof()) {
            fail("local class without body");
        }
        AstNode body = parse_class_body();
        AstNode n = make_other("local-class", start);
        n.children.push_back(std::move(body));
        return n;
    }

    AstNode parse_paren_condition() {
        expect_punct("(");
        AstNode c = parse_expression();
        expect_punct(")");
        return with_role(std::move(c), Role::condition);
    }

    AstNode parse_if() {
        const std::size_t start = p_;
        ++p_;
        AstNode n;
        n.kind = NodeKind::if_stmt;
        n.children.push_back(parse_paren_condition());
        n.children.push_back(with_role(parse_single_statement(), Role::body));
        if (kw("else")) {
            ++p_;
            n.children.push_back(with_role(parse_single_statement(), Role::body));
            n.attrs["else"] = "true";
        }
        n.span = span_of(start, p_);
        return n;
    }

    AstNode parse_while() {
        const std::size_t start = p_;
        ++p_;
        AstNode n;
        n.kind = NodeKind::loop;
        n.attrs["form"] = "while";
        n.children.push_back(parse_paren_condition());
        n.children.push_back(with_role(parse_single_statement(), Role::body));
        n.span = span_of(start, p_);
        return n;
    }

    AstNode parse_do() {
        const std::size_t start = p_;
        ++p_;
        AstNode n;
        n.kind = NodeKind::loop;
        n.attrs["form"] = "do";
        n.children.push_back(with_role(parse_single_statement(), Role::body));
        if (!kw("while")) {
            fail("expected 'while' after do body");
        }
        ++p_;
        n.children.push_back(parse_paren_condition());
        expect_semicolon();
        n.span = span_of(start, p_);
        return n;
    }

    bool is_foreach_header() const {
        // p_ is just after '('; look for ':' at depth 0 before ')' or ';'.
        int depth = 0;
        for (std::size_t q = p_; q < sig_.size(); ++q) {
            const Token& t = all_[sig_[q]];
            if (t.kind == TokenKind::punctuation) {
                if (t.text == "(" || t.text == "[" || t.text == "{") {
                    ++depth;
                } else if (t.text == ")" || t.text == "]" || t.text == "}") {
                    if (depth == 0) {
                        return false;
                    }
                    --depth;
                } else if (t.text == ";" && depth == 0) {
                    return false;
                }
            } else if (t.is(TokenKind::op, ":") && depth == 0) {
                return true;
            } else if (t.is(TokenKind::op, "?") && depth == 0) {
                return false;
            }
        }
        return false;
    }

    AstNode parse_for() {
        const std::size_t start = p_;
        ++p_;
        expect_punct("(");
        AstNode n;
        n.kind = NodeKind::loop;
        if (is_foreach_header()) {
            n.attrs["form"] = "foreach";
            const std::size_t decl_start = p_;
            skip_annotations_and_modifiers();
            if (ident_text("var") && ident(1)) {
                ++p_;
            } else {
                skip_type();
            }
            if (!ident()) {
                fail("expected loop variable");
            }
            AstNode decl;
            decl.kind = NodeKind::var_decl;
            decl.attrs["name"] = tok().text;
            ++p_;
            decl.span = span_of(decl_start, p_);
            n.children.push_back(std::move(decl));
            if (!op(":")) {
                fail("expected ':' in enhanced for");
            }
            ++p_;
            n.children.push_back(parse_expression());
            expect_punct(")");
        } else {
            n.attrs["form"] = "for";
            if (!punct(";")) {
                if (looks_like_local_var_decl()) {
                    parse_local_var_decl(n.children);
                } else {
                    parse_expression_list(n.children);
                }
            }
            expect_punct(";");
            if (!punct(";")) {
                n.children.push_back(with_role(parse_expression(), Role::condition));
            }
            expect_punct(";");
            if (!punct(")")) {
                parse_expression_list(n.children);
            }
            expect_punct(")");
        }
        n.children.push_back(with_role(parse_single_statement(), Role::body));
        n.span = span_of(start, p_);
        return n;
    }

    void parse_expression_list(std::vector<AstNode>& out) {
        out.push_back(parse_expression());
        while (punct(",")) {
            ++p_;
            out.push_back(parse_expression());
        }
    }

    AstNode parse_switch() {
        const std::size_t start = p_;
        ++p_;
        std::vector<AstNode> children;
        children.push_back(parse_paren_condition());
        expect_punct("{");
        while (!punct("}")) {
            if (eof()) {
                fail("unterminated switch");
            }
            if (kw("case") || kw("default")) {
                // Labels are skipped up to ':' or '->' at depth 0.
                int depth = 0;
                while (!eof()) {
                    if (punct("(") || punct("{") || punct("[")) {
                        ++depth;
                    } else if (punct(")") || punct("}") || punct("]")) {
                        --depth;
                    } else if (depth == 0 && (op(":") || op("->"))) {
                        break;
                    }
                    ++p_;
                }
                if (eof()) {
                    fail("unterminated case label");
                }
                const bool arrow = op("->");
                ++p_;
                if (arrow) {
                    if (punct("{")) {
                        children.push_back(parse_block());
                    } else if (kw("throw")) {
                        parse_statement(children);
                    } else {
                        children.push_back(parse_expression());
                        expect_semicolon();
                    }
                }
                continue;
            }
            parse_statement_recovering(children);
        }
        ++p_;
        AstNode n = make_other("switch", start);
        n.children = std::move(children);
        return n;
    }

    AstNode parse_try() {
        const std::size_t start = p_;
        ++p_;
        std::vector<AstNode> children;
        if (punct("(")) {
            ++p_;
            while (!punct(")")) {
                if (eof()) {
                    fail("unterminated resource list");
                }
                if (looks_like_local_var_decl()) {
                    parse_local_var_decl(children);
                } else {
                    children.push_back(parse_expression());
                }
                if (punct(";")) {
                    ++p_;
                }
            }
            ++p_;
        }
        children.push_back(parse_block());
        while (kw("catch")) {
            ++p_;
            expect_punct("(");
            const std::size_t decl_start = p_;
            skip_annotations_and_modifiers();
            skip_type();
            while (op("|")) {
                ++p_;
                skip_type();
            }
            if (!ident()) {
                fail("expected catch parameter");
            }
            AstNode decl;
            decl.kind = NodeKind::var_decl;
            decl.attrs["name"] = tok().text;
            ++p_;
            decl.span = span_of(decl_start, p_);
            children.push_back(std::move(decl));
            expect_punct(")");
            children.push_back(parse_block());
        }
        if (kw("finally")) {
            ++p_;
            children.push_back(parse_block());
        }
        AstNode n = make_other("try", start);
        n.children = std::move(children);
        return n;
    }

    // ---- expressions ---------------------------------------------------

    AstNode parse_expression() { return parse_assignment(); }

    bool at_lambda() const {
        if (ident() && op("->", 1)) {
            return true;
        }
        if (!punct("(")) {
            return false;
        }
        int depth = 0;
        for (std::size_t q = p_; q < sig_.size(); ++q) {
            const Token& t = all_[sig_[q]];
            if (t.is(TokenKind::punctuation, "(")) {
                ++depth;
            } else if (t.is(TokenKind::punctuation, ")")) {
                if (--depth == 0) {
                    return q + 1 < sig_.size() && all_[sig_[q + 1]].is(TokenKind::op, "->");
                }
            }
        }
        return false;
    }

    AstNode parse_lambda() {
        const std::size_t start = p_;
        std::vector<AstNode> children;
        auto add_param = [&](std::size_t from) {
            AstNode decl;
            decl.kind = NodeKind::var_decl;
            decl.attrs["name"] = all_[sig_[p_ - 1]].text;
            decl.span = span_of(from, p_);
            children.push_back(std::move(decl));
        };
        if (ident()) {
            ++p_;
            add_param(p_ - 1);
        } else {
            ++p_;  // '('
            while (!punct(")")) {
                const std::size_t from = p_;
                // Parameters may be typed or bare; the name is the last
                // identifier before ',' or ')'.
                int depth = 0;
                while (!eof() && !(depth == 0 && (punct(",") || punct(")")))) {
                    if (op("<")) {
                        ++depth;
                    } else if (op(">")) {
                        --depth;
                    } else if (op(">>")) {
                        depth -= 2;
                    }
                    ++p_;
                }
                if (eof()) {
                    fail("unterminated lambda parameters");
                }
                std::size_t back = p_;
                while (back > from && all_[sig_[back - 1]].is(TokenKind::punctuation, "]")) {
                    back -= 2;
                }
                if (back > from && all_[sig_[back - 1]].kind == TokenKind::identifier) {
                    AstNode decl;
                    decl.kind = NodeKind::var_decl;
                    decl.attrs["name"] = all_[sig_[back - 1]].text;
                    decl.span = span_of(from, p_);
                    children.push_back(std::move(decl));
                }
                if (punct(",")) {
                    ++p_;
                }
            }
            ++p_;
        }
        ++p_;  // '->'
        if (punct("{")) {
            children.push_back(with_role(parse_block(), Role::body));
        } else {
            children.push_back(with_role(parse_expression(), Role::body));
        }
        AstNode n = make_other("lambda", start);
        n.children = std::move(children);
        return n;
    }

    AstNode parse_assignment() {
        if (at_lambda()) {
            return parse_lambda();
        }
        const std::size_t start = p_;
        AstNode lhs = parse_ternary();
        if (tok().kind == TokenKind::op && is_assign_op(tok().text)) {
            const std::string o = tok().text;
            ++p_;
            AstNode rhs = punct("{") ? parse_array_initializer() : parse_assignment();
            AstNode n;
            n.kind = NodeKind::assign;
            n.attrs["op"] = o;
            n.children.push_back(with_role(std::move(lhs), Role::target));
            n.children.push_back(with_role(std::move(rhs), Role::source));
            n.span = span_of(start, p_);
            return n;
        }
        return lhs;
    }

    AstNode parse_ternary() {
        const std::size_t start = p_;
        AstNode cond = parse_binary(1);
        if (!op("?")) {
            return cond;
        }
        ++p_;
        AstNode a = parse_ternary_branch();
        if (!op(":")) {
            fail("expected ':' in conditional expression");
        }
        ++p_;
        AstNode b = parse_ternary_branch();
        AstNode n;
        n.kind = NodeKind::other;
        n.attrs["name"] = "conditional";
        n.attrs["op"] = "?:";
        n.children.push_back(with_role(std::move(cond), Role::condition));
        n.children.push_back(std::move(a));
        n.children.push_back(std::move(b));
        n.span = span_of(start, p_);
        n.compact_text = compact(start, p_);
        return n;
    }

    AstNode parse_ternary_branch() {
        if (at_lambda()) {
            return parse_lambda();
        }
        return parse_ternary();
    }

    AstNode parse_binary(int min_prec) {
        const std::size_t start = p_;
        AstNode lhs = parse_unary();
        for (;;) {
            const Token& t = tok();
            int prec = 0;
            if (t.kind == TokenKind::op) {
                prec = binary_precedence(t.text);
            } else if (t.is(TokenKind::keyword, "instanceof")) {
                prec = binary_precedence("instanceof");
            }
            if (prec == 0 || prec < min_prec) {
                return lhs;
            }
            const std::string o = t.text;
            ++p_;
            AstNode n;
            n.kind = NodeKind::binary_op;
            n.attrs["op"] = o;
            n.children.push_back(std::move(lhs));
            if (o == "instanceof") {
                const std::size_t type_start = p_;
                if (kw("final")) {
                    ++p_;
                }
                skip_type();
                n.children.push_back(make_other("type", type_start));
                if (ident()) {
                    const std::size_t decl_start = p_;
                    ++p_;
                    AstNode decl = make(NodeKind::var_decl, decl_start);
                    decl.attrs["name"] = all_[sig_[p_ - 1]].text;
                    n.children.push_back(std::move(decl));
                }
            } else {
                n.children.push_back(parse_binary(prec + 1));
            }
            n.span = span_of(start, p_);
            lhs = std::move(n);
        }
    }

    bool at_cast() const {
        if (!punct("(")) {
            return false;
        }
        const std::size_t q = scan_type(p_ + 1);
        if (q == std::string_view::npos || q >= sig_.size()) {
            return false;
        }
        std::size_t close = q;
        // Intersection casts: (A & B)
        while (close < sig_.size() && all_[sig_[close]].is(TokenKind::op, "&")) {
            const auto next = scan_type(close + 1);
            if (next == std::string_view::npos) {
                return false;
            }
            close = next;
        }
        if (close >= sig_.size() || !all_[sig_[close]].is(TokenKind::punctuation, ")")) {
            return false;
        }
        const Token& type_tok = all_[sig_[p_ + 1]];
        const bool primitive = type_tok.kind == TokenKind::keyword && is_primitive_type(type_tok.text);
        if (close + 1 >= sig_.size()) {
            return false;
        }
        const Token& next = all_[sig_[close + 1]];
        if (primitive) {
            return !next.is(TokenKind::punctuation, ".") && !next.is(TokenKind::punctuation, ")");
        }
        switch (next.kind) {
            case TokenKind::identifier:
            case TokenKind::literal_number:
            case TokenKind::literal_string:
            case TokenKind::literal_char:
                return true;
            case TokenKind::keyword:
                return next.text == "this" || next.text == "new" || next.text == "super" ||
                       next.text == "true" || next.text == "false" || next.text == "null" ||
                       next.text == "switch";
            case TokenKind::punctuation:
                return next.text == "(";
            case TokenKind::op:
                return next.text == "!" || next.text == "~";
            default:
                return false;
        }
    }

    AstNode parse_unary() {
        const std::size_t start = p_;
        if (tok().kind == TokenKind::op &&
            (op("+") || op("-") || op("!") || op("~") || op("++") || op("--"))) {
            const std::string o = tok().text;
            ++p_;
            AstNode operand = parse_unary();
            AstNode n;
            n.kind = NodeKind::unary_op;
            n.attrs["op"] = o;
            n.children.push_back(std::move(operand));
            n.span = span_of(start, p_);
            return n;
        }
        if (at_cast()) {
            ++p_;
            const std::size_t type_start = p_;
            skip_type();
            while (op("&")) {
                ++p_;
                skip_type();
            }
            const std::string type = compact(type_start, p_);
            expect_punct(")");
            AstNode operand = at_lambda() ? parse_lambda() : parse_unary();
            AstNode n;
            n.kind = NodeKind::other;
            n.attrs["name"] = "cast";
            n.attrs["type"] = type;
            n.children.push_back(std::move(operand));
            n.span = span_of(start, p_);
            n.compact_text = compact(start, p_);
            return n;
        }
        return parse_postfix();
    }

    std::vector<AstNode> parse_arguments() {
        expect_punct("(");
        std::vector<AstNode> args;
        while (!punct(")")) {
            if (eof()) {
                fail("unterminated argument list");
            }
            args.push_back(parse_expression());
            if (punct(",")) {
                ++p_;
            } else if (!punct(")")) {
                fail("expected ',' or ')' in argument list");
            }
        }
        ++p_;
        return args;
    }

    AstNode make_call(const std::string& name, std::optional<AstNode> receiver,
                      std::vector<AstNode> args, std::size_t start) {
        AstNode n;
        n.kind = NodeKind::call;
        n.attrs["name"] = name;
        if (!method_name_.empty() && name == method_name_) {
            n.attrs["recursive"] = "true";
        }
        if (receiver) {
            n.attrs["receiver"] = "true";
            n.children.push_back(std::move(*receiver));
        }
        for (auto& a : args) {
            n.children.push_back(std::move(a));
        }
        n.span = span_of(start, p_);
        return n;
    }

    AstNode parse_postfix() {
        const std::size_t start = p_;
        AstNode expr = parse_primary();
        bool last_was_index = false;
        for (;;) {
            if (punct(".")) {
                ++p_;
                if (op("<")) {
                    const auto q = scan_type_args(p_);
                    if (q == std::string_view::npos) {
                        fail("malformed type arguments");
                    }
                    p_ = q;
                }
                if (ident() || kw("this") || kw("super")) {
                    const std::string name = tok().text;
                    ++p_;
                    if (punct("(")) {
                        auto args = parse_arguments();
                        expr = make_call(name, std::move(expr), std::move(args), start);
                    } else {
                        AstNode n;
                        n.kind = NodeKind::other;
                        n.attrs["name"] = name;
                        n.attrs["op"] = ".";
                        n.children.push_back(std::move(expr));
                        n.span = span_of(start, p_);
                        n.compact_text = compact(start, p_);
                        expr = std::move(n);
                    }
                } else if (kw("new")) {
                    AstNode creation = parse_new();
                    AstNode n;
                    n.kind = NodeKind::other;
                    n.attrs["name"] = "qualified-new";
                    n.children.push_back(std::move(expr));
                    n.children.push_back(std::move(creation));
                    n.span = span_of(start, p_);
                    n.compact_text = compact(start, p_);
                    expr = std::move(n);
                } else if (kw("class")) {
                    ++p_;
                    expr = make_other("class-literal", start);
                } else {
                    fail("expected member name after '.'");
                }
                last_was_index = false;
            } else if (punct("[")) {
                ++p_;
                AstNode index = parse_expression();
                expect_punct("]");
                if (last_was_index && expr.kind == NodeKind::array_access) {
                    expr.indices.push_back(canonical_index_text(index));
                    expr.children.push_back(std::move(index));
                    expr.span = span_of(start, p_);
                } else {
                    AstNode n;
                    n.kind = NodeKind::array_access;
                    n.attrs["name"] = canonical_index_text(expr);
                    n.indices.push_back(canonical_index_text(index));
                    n.children.push_back(std::move(expr));
                    n.children.push_back(std::move(index));
                    n.span = span_of(start, p_);
                    expr = std::move(n);
                }
                last_was_index = true;
            } else if (punct("::")) {
                ++p_;
                if (ident() || kw("new")) {
                    ++p_;
                } else {
                    fail("expected method reference name");
                }
                AstNode n = make_other("method-ref", start);
                n.children.push_back(std::move(expr));
                expr = std::move(n);
                last_was_index = false;
            } else if (op("++") || op("--")) {
                AstNode n;
                n.kind = NodeKind::unary_op;
                n.attrs["op"] = tok().text;
                n.attrs["postfix"] = "true";
                ++p_;
                n.children.push_back(std::move(expr));
                n.span = span_of(start, p_);
                expr = std::move(n);
                last_was_index = false;
            } else {
                return expr;
            }
        }
    }

    AstNode parse_new() {
        const std::size_t start = p_;
        ++p_;  // new
        while (punct("@")) {
            skip_annotation();
        }
        const std::size_t type_start = p_;
        if (tok().kind == TokenKind::keyword && is_primitive_type(tok().text)) {
            ++p_;
        } else if (ident()) {
            ++p_;
            for (;;) {
                if (op("<")) {
                    const auto q = scan_type_args(p_);
                    if (q == std::string_view::npos) {
                        // Diamond `<>` lexes as '<' '>'.
                        fail("malformed type arguments in creation");
                    }
                    p_ = q;
                }
                if (punct(".") && ident(1)) {
                    p_ += 2;
                    continue;
                }
                break;
            }
        } else {
            fail("expected type after 'new'");
        }
        const std::string type = compact(type_start, p_);
        if (punct("[")) {
            std::vector<AstNode> dims;
            while (punct("[")) {
                ++p_;
                if (punct("]")) {
                    ++p_;
                    continue;
                }
                dims.push_back(parse_expression());
                expect_punct("]");
            }
            if (punct("{")) {
                dims.push_back(parse_array_initializer());
            }
            AstNode n = make_other("new-array", start);
            n.attrs["type"] = type;
            n.children = std::move(dims);
            return n;
        }
        auto args = parse_arguments();
        std::vector<AstNode> children = std::move(args);
        if (punct("{")) {
            children.push_back(parse_class_body());
        }
        AstNode n = make_other("new", start);
        n.attrs["type"] = type;
        n.children = std::move(children);
        return n;
    }

    AstNode parse_primary() {
        const std::size_t start = p_;
        const Token& t = tok();
        if (eof()) {
            fail("unexpected end of expression");
        }
        switch (t.kind) {
            case TokenKind::literal_number:
            case TokenKind::literal_string:
            case TokenKind::literal_char: {
                AstNode n;
                n.kind = NodeKind::literal;
                n.attrs["value"] = t.text;
                ++p_;
                n.span = span_of(start, p_);
                return n;
            }
            case TokenKind::identifier: {
                const std::string name = t.text;
                ++p_;
                if (punct("(")) {
                    auto args = parse_arguments();
                    return make_call(name, std::nullopt, std::move(args), start);
                }
                AstNode n;
                n.kind = NodeKind::identifier_ref;
                n.attrs["name"] = name;
                n.span = span_of(start, p_);
                return n;
            }
            case TokenKind::keyword: {
                if (t.text == "true" || t.text == "false" || t.text == "null") {
                    AstNode n;
                    n.kind = NodeKind::literal;
                    n.attrs["value"] = t.text;
                    ++p_;
                    n.span = span_of(start, p_);
                    return n;
                }
                if (t.text == "this" || t.text == "super") {
                    const std::string name = t.text;
                    ++p_;
                    if (punct("(")) {
                        auto args = parse_arguments();
                        return make_call(name, std::nullopt, std::move(args), start);
                    }
                    AstNode n;
                    n.kind = NodeKind::identifier_ref;
                    n.attrs["name"] = name;
                    n.span = span_of(start, p_);
                    return n;
                }
                if (t.text == "new") {
                    return parse_new();
                }
                if (t.text == "switch") {
                    return parse_switch();
                }
                if (is_primitive_type(t.text)) {
                    // int.class, int[].class
                    ++p_;
                    while (punct("[") && punct("]", 1)) {
                        p_ += 2;
                    }
                    if (punct(".") && kw("class", 1)) {
                        p_ += 2;
                        return make_other("class-literal", start);
                    }
                    if (punct("::")) {
                        return make_other("type", start);
                    }
                }
                fail("unexpected keyword in expression");
            }
            case TokenKind::punctuation: {
                if (t.text == "(") {
                    ++p_;
                    AstNode inner = parse_expression();
                    expect_punct(")");
                    return inner;
                }
                if (t.text == "@") {
                    skip_annotation();
                    return parse_primary();
                }
                fail("unexpected punctuation in expression");
            }
            default:
                fail("unexpected token in expression");
        }
    }

    const TokenStream& all_;
    std::vector<std::size_t> sig_;
    std::size_t p_ = 0;
    std::string method_name_;
    std::size_t recovered_ = 0;
};

bool needs_parens(const AstNode& n) {
    if (n.kind == NodeKind::binary_op || n.kind == NodeKind::assign) {
        return true;
    }
    if (n.kind == NodeKind::other) {
        const auto* name = n.attr("name");
        return name && (*name == "conditional" || *name == "lambda" || *name == "cast");
    }
    return false;
}

std::string wrapped(const AstNode& n) {
    std::string s = canonical_index_text(n);
    return needs_parens(n) ? "(" + s + ")" : s;
}

void kind_tree_into(const AstNode& n, std::string& out) {
    out += "(";
    out += to_string(n.kind);
    for (const auto& c : n.children) {
        out += " ";
        kind_tree_into(c, out);
    }
    out += ")";
}

}  // namespace

std::string_view to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::method: return "method";
        case NodeKind::block: return "block";
        case NodeKind::loop: return "loop";
        case NodeKind::if_stmt: return "if";
        case NodeKind::assign: return "assign";
        case NodeKind::var_decl: return "var-decl";
        case NodeKind::array_access: return "array-access";
        case NodeKind::call: return "call";
        case NodeKind::return_stmt: return "return";
        case NodeKind::binary_op: return "binary-op";
        case NodeKind::unary_op: return "unary-op";
        case NodeKind::identifier_ref: return "identifier-ref";
        case NodeKind::literal: return "literal";
        case NodeKind::other: return "other";
    }
    return "?";
}

std::string_view to_string(Role role) {
    switch (role) {
        case Role::none: return "none";
        case Role::target: return "target";
        case Role::source: return "source";
        case Role::condition: return "condition";
        case Role::body: return "body";
    }
    return "?";
}

std::optional<NodeKind> parse_node_kind(std::string_view text) {
    for (int k = 0; k <= static_cast<int>(NodeKind::other); ++k) {
        const auto kind = static_cast<NodeKind>(k);
        if (to_string(kind) == text) {
            return kind;
        }
    }
    return std::nullopt;
}

std::optional<Role> parse_role(std::string_view text) {
    for (int r = 0; r <= static_cast<int>(Role::body); ++r) {
        const auto role = static_cast<Role>(r);
        if (to_string(role) == text) {
            return role;
        }
    }
    return std::nullopt;
}

std::size_t count_nodes(const AstNode& root) {
    std::size_t n = 1;
    for (const auto& c : root.children) {
        n += count_nodes(c);
    }
    return n;
}

std::string kind_tree(const AstNode& root) {
    std::string out;
    kind_tree_into(root, out);
    return out;
}

std::string canonical_index_text(const AstNode& n) {
    auto attr = [&](std::string_view key) -> std::string {
        const auto* v = n.attr(key);
        return v ? *v : std::string();
    };
    switch (n.kind) {
        case NodeKind::identifier_ref:
            return attr("name");
        case NodeKind::literal:
            return attr("value");
        case NodeKind::binary_op: {
            if (n.children.size() != 2) {
                break;
            }
            const std::string o = attr("op");
            if (o == "instanceof") {
                return wrapped(n.children[0]) + " instanceof " + canonical_index_text(n.children[1]);
            }
            return wrapped(n.children[0]) + o + wrapped(n.children[1]);
        }
        case NodeKind::unary_op: {
            if (n.children.size() != 1) {
                break;
            }
            if (attr("postfix") == "true") {
                return wrapped(n.children[0]) + attr("op");
            }
            return attr("op") + wrapped(n.children[0]);
        }
        case NodeKind::assign:
            if (n.children.size() == 2) {
                return canonical_index_text(n.children[0]) + attr("op") +
                       canonical_index_text(n.children[1]);
            }
            break;
        case NodeKind::array_access: {
            if (n.children.empty()) {
                break;
            }
            std::string s = wrapped(n.children[0]);
            for (const auto& idx : n.indices) {
                s += "[" + idx + "]";
            }
            return s;
        }
        case NodeKind::call: {
            std::string s;
            std::size_t first_arg = 0;
            if (attr("receiver") == "true" && !n.children.empty()) {
                s = wrapped(n.children[0]) + ".";
                first_arg = 1;
            }
            s += attr("name") + "(";
            for (std::size_t i = first_arg; i < n.children.size(); ++i) {
                if (i > first_arg) {
                    s += ",";
                }
                s += canonical_index_text(n.children[i]);
            }
            return s + ")";
        }
        case NodeKind::other:
            if (attr("op") == "." && n.children.size() == 1) {
                return wrapped(n.children[0]) + "." + attr("name");
            }
            if (attr("op") == "?:" && n.children.size() == 3) {
                return wrapped(n.children[0]) + "?" + wrapped(n.children[1]) + ":" +
                       wrapped(n.children[2]);
            }
            if (attr("name") == "cast" && n.children.size() == 1) {
                return "(" + attr("type") + ")" + wrapped(n.children[0]);
            }
            break;
        default:
            break;
    }
    return n.compact_text;
}

ParseResult parse_method_tokens(const TokenStream& tokens, std::string_view method_name) {
    return Parser(tokens, method_name).run();
}

std::optional<AstNode> parse_method(const MethodRecord& record) {
    return parse_method_tokens(record.tokens, record.name).ast;
}

}  // namespace algorec::code_model
