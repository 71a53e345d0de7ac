#include "algorec/structural/pattern.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>

#include "algorec/algorithms.hpp"
#include "algorec/errors.hpp"

namespace algorec::structural {

namespace fs = std::filesystem;

namespace {

bool is_role_word(std::string_view w) {
    return w == "target" || w == "source" || w == "condition" || w == "body";
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

class DslParser {
public:
    explicit DslParser(std::string_view text) : text_(text) {}

    StructuralPattern parse() {
        StructuralPattern pattern;
        skip_space();
        if (at_end()) {
            fail("empty pattern");
        }
        pattern.root = parse_pattern();
        skip_space();
        if (!at_end()) {
            fail("unexpected text after pattern");
        }
        pattern.equalities = std::move(equalities_);
        pattern.algorithm = algorithm_;
        pattern.family = family_.empty() ? "prominent_feature" : family_;
        pattern.variant = variant_;
        pattern.reconstructed = reconstructed_;

        if (pattern.family != "prominent_feature" && pattern.family != "standalone") {
            throw PatternError("unknown family '" + pattern.family + "'");
        }
        if (!pattern.algorithm.empty()) {
            const auto id = resolve_algorithm(pattern.algorithm);
            if (!id) {
                throw PatternError("unknown algorithm '" + pattern.algorithm + "'");
            }
            pattern.algorithm = *id;
        }
        int next_id = 0;
        number(pattern.root, next_id);
        pattern.node_count = next_id;

        const auto bound = bound_captures(pattern.root);
        for (const auto& [a, b] : pattern.equalities) {
            for (const auto& name : {a, b}) {
                if (std::find(bound.begin(), bound.end(), name) == bound.end()) {
                    throw PatternError("equality references unbound capture '@" + name + "'");
                }
            }
        }
        return pattern;
    }

private:
    static void number(PatternNode& n, int& next) {
        n.id = next++;
        for (auto& c : n.children) {
            number(c, next);
        }
    }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw PatternError("line " + std::to_string(line_) + ", column " + std::to_string(col_) +
                           ": " + msg);
    }

    void skip_space() {
        for (;;) {
            while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) {
                advance();
            }
            if (peek() == '#' || peek() == ';') {
                const bool header = peek() == '#';
                const std::size_t start = pos_;
                while (!at_end() && peek() != '\n') {
                    advance();
                }
                if (header) {
                    handle_header(text_.substr(start + 1, pos_ - start - 1));
                }
                continue;
            }
            return;
        }
    }

    void handle_header(std::string_view line) {
        const auto colon = line.find(':');
        if (colon == std::string_view::npos) {
            return;  // plain comment
        }
        const std::string key = trim(line.substr(0, colon));
        const std::string value = trim(line.substr(colon + 1));
        if (key == "algorithm") {
            algorithm_ = value;
        } else if (key == "family") {
            family_ = value;
        } else if (key == "variant") {
            variant_ = value;
        } else if (key == "reconstructed") {
            reconstructed_ = value == "true";
        } else if (key == "equal") {
            const auto comma = value.find(',');
            if (comma == std::string::npos) {
                fail("#equal expects two capture names");
            }
            auto strip = [&](std::string s) {
                s = trim(s);
                if (!s.empty() && s[0] == '@') {
                    s.erase(0, 1);
                }
                if (s.empty()) {
                    fail("#equal expects two capture names");
                }
                return s;
            };
            equalities_.emplace_back(strip(value.substr(0, comma)), strip(value.substr(comma + 1)));
        }
    }

    void expect(char c) {
        skip_space();
        if (peek() != c) {
            fail(std::string("expected '") + c + "'");
        }
        advance();
    }

    std::string word() {
        std::string w;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-' ||
                             peek() == '_')) {
            w.push_back(peek());
            advance();
        }
        return w;
    }

    std::string quoted() {
        advance();  // opening quote
        std::string s;
        while (!at_end() && peek() != '"') {
            if (peek() == '\\' && pos_ + 1 < text_.size()) {
                advance();
            }
            if (peek() == '\n') {
                fail("unterminated string");
            }
            s.push_back(peek());
            advance();
        }
        if (at_end()) {
            fail("unterminated string");
        }
        advance();
        return s;
    }

    std::string regex_literal() {
        advance();  // opening slash
        std::string s;
        while (!at_end() && peek() != '/') {
            if (peek() == '\\' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
                advance();
            }
            if (peek() == '\n') {
                fail("unterminated regex");
            }
            s.push_back(peek());
            advance();
        }
        if (at_end()) {
            fail("unterminated regex");
        }
        advance();
        return s;
    }

    std::string capture_name() {
        advance();  // '@'
        std::string name = word();
        if (name.empty()) {
            fail("expected capture name after '@'");
        }
        return name;
    }

    PatternNode parse_pattern() {
        skip_space();
        const int line = line_;
        const int col = col_;
        expect('(');
        skip_space();
        const std::string head = word();
        if (head.empty()) {
            fail("expected node kind");
        }
        PatternNode node;
        node.line = line;
        node.column = col;
        if (head == "or" || head == "and") {
            node.type = head == "or" ? PatternNode::Type::any_of : PatternNode::Type::all_of;
            for (;;) {
                skip_space();
                if (peek() == ')') {
                    advance();
                    break;
                }
                if (peek() != '(') {
                    fail("'" + head + "' takes only patterns");
                }
                node.children.push_back(parse_pattern());
            }
            if (node.children.size() < 2) {
                fail("'" + head + "' needs at least two branches");
            }
            return node;
        }
        if (head != "any") {
            node.kind = code_model::parse_node_kind(head);
            if (!node.kind) {
                fail("unknown node kind '" + head + "'");
            }
        }
        std::set<std::string> keys;
        for (;;) {
            skip_space();
            if (at_end()) {
                fail("unterminated pattern");
            }
            if (peek() == ')') {
                advance();
                return node;
            }
            if (peek() == '(') {
                node.children.push_back(parse_pattern());
                continue;
            }
            const std::string key = word();
            if (key.empty()) {
                fail(std::string("unexpected '") + peek() + "'");
            }
            skip_space();
            if (peek() != '=') {
                fail("expected '=' after '" + key + "'");
            }
            advance();
            skip_space();
            if (is_role_word(key) && peek() == '(') {
                PatternNode child = parse_pattern();
                child.role = code_model::parse_role(key);
                node.children.push_back(std::move(child));
                continue;
            }
            if (!keys.insert(key).second) {
                fail("duplicate attribute '" + key + "'");
            }
            node.attrs.push_back(parse_attr_value(key));
        }
    }

    AttrMatcher parse_attr_value(const std::string& key) {
        AttrMatcher m;
        m.key = key;
        const char c = peek();
        if (c == '"') {
            m.type = AttrMatcher::Type::exact;
            m.text = quoted();
        } else if (c == '/') {
            m.type = AttrMatcher::Type::regex;
            m.text = regex_literal();
            try {
                m.re = std::make_shared<const std::regex>(m.text, std::regex::ECMAScript);
            } catch (const std::regex_error& e) {
                fail("invalid regex /" + m.text + "/: " + e.what());
            }
        } else if (c == '@') {
            m.type = AttrMatcher::Type::capture;
            m.text = capture_name();
        } else if (c == '[') {
            m.type = AttrMatcher::Type::index_list;
            advance();
            std::set<std::string> names;
            for (;;) {
                skip_space();
                if (peek() == '@') {
                    IndexItem item{true, capture_name()};
                    if (!names.insert(item.text).second) {
                        fail("capture '@" + item.text + "' bound twice in one index list");
                    }
                    m.items.push_back(std::move(item));
                } else if (peek() == '"') {
                    m.items.push_back({false, quoted()});
                } else {
                    fail("index list items must be @captures or strings");
                }
                skip_space();
                if (peek() == ',') {
                    advance();
                    continue;
                }
                if (peek() == ']') {
                    advance();
                    break;
                }
                fail("expected ',' or ']' in index list");
            }
        } else {
            m.type = AttrMatcher::Type::exact;
            m.text = word();
            if (m.text.empty()) {
                fail("expected attribute value for '" + key + "'");
            }
        }
        return m;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    std::string algorithm_;
    std::string family_;
    std::string variant_;
    bool reconstructed_ = false;
    std::vector<std::pair<std::string, std::string>> equalities_;
};

void collect_captures(const PatternNode& n, std::vector<std::string>& out) {
    for (const auto& a : n.attrs) {
        if (a.type == AttrMatcher::Type::capture) {
            out.push_back(a.text);
        } else if (a.type == AttrMatcher::Type::index_list) {
            for (const auto& item : a.items) {
                if (item.capture) {
                    out.push_back(item.text);
                }
            }
        }
    }
    for (const auto& c : n.children) {
        collect_captures(c, out);
    }
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out.push_back('\\');
        }
        out.push_back(c);
    }
    return out + "\"";
}

}  // namespace

StructuralPattern parse_dsl(std::string_view text) { return DslParser(text).parse(); }

StructuralPattern load_pattern(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot read pattern file " + path.string());
    }
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    try {
        return parse_dsl(text);
    } catch (const PatternError& e) {
        throw PatternError(path.string() + ": " + e.what());
    }
}

std::vector<StructuralPattern> load_patterns(const fs::path& path) {
    std::error_code ec;
    if (!fs::exists(path, ec)) {
        throw DataError("pattern path does not exist: " + path.string());
    }
    std::vector<StructuralPattern> out;
    if (!fs::is_directory(path)) {
        out.push_back(load_pattern(path));
        return out;
    }
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(path)) {
        if (e.is_regular_file() && e.path().extension() == ".pat") {
            files.push_back(e.path());
        }
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        out.push_back(load_pattern(f));
    }
    return out;
}

std::vector<std::string> bound_captures(const PatternNode& node) {
    std::vector<std::string> out;
    collect_captures(node, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string to_dsl(const PatternNode& node) {
    std::string out = "(";
    switch (node.type) {
        case PatternNode::Type::any_of: out += "or"; break;
        case PatternNode::Type::all_of: out += "and"; break;
        case PatternNode::Type::node:
            out += node.kind ? std::string(code_model::to_string(*node.kind)) : "any";
            break;
    }
    for (const auto& a : node.attrs) {
        out += " " + a.key + "=";
        switch (a.type) {
            case AttrMatcher::Type::exact: out += quote(a.text); break;
            case AttrMatcher::Type::regex: {
                std::string escaped;
                for (char c : a.text) {
                    if (c == '/') {
                        escaped.push_back('\\');
                    }
                    escaped.push_back(c);
                }
                out += "/" + escaped + "/";
                break;
            }
            case AttrMatcher::Type::capture: out += "@" + a.text; break;
            case AttrMatcher::Type::index_list: {
                out += "[";
                for (std::size_t i = 0; i < a.items.size(); ++i) {
                    if (i > 0) {
                        out += ",";
                    }
                    out += a.items[i].capture ? "@" + a.items[i].text : quote(a.items[i].text);
                }
                out += "]";
                break;
            }
        }
    }
    for (const auto& c : node.children) {
        out += " ";
        if (c.role) {
            out += std::string(code_model::to_string(*c.role)) + "=";
        }
        out += to_dsl(c);
    }
    return out + ")";
}

}  // namespace algorec::structural
