#include "algorec/obfuscate/obfuscator.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "algorec/errors.hpp"

namespace algorec::obfuscate {

using code_model::AstNode;
using code_model::MethodRecord;
using code_model::NodeKind;
using code_model::Token;
using code_model::TokenKind;

namespace {

class DeclarationScanner {
public:
    explicit DeclarationScanner(const code_model::TokenStream& tokens) : all_(tokens) {
        for (std::size_t i = 0; i < all_.size(); ++i) {
            if (!all_[i].is_trivia()) {
                sig_.push_back(&all_[i]);
            }
        }
    }

    void collect(std::set<std::string>& out) const {
        for (std::size_t k = 0; k < sig_.size(); ++k) {
            const Token& t = *sig_[k];
            if (t.kind != TokenKind::identifier) {
                continue;
            }
            if (is(k + 1, TokenKind::op, "->")) {
                // x -> ..., but not a switch label "case X ->".
                if (k == 0 || !sig_[k - 1]->is(TokenKind::keyword, "case")) {
                    out.insert(t.text);
                }
                continue;
            }
            if (k == 0 || !declarator_follows(k + 1)) {
                continue;
            }
            if (type_ends_at(k - 1)) {
                out.insert(t.text);
            }
        }
        collect_lambda_params(out);
    }

private:
    bool is(std::size_t k, TokenKind kind, std::string_view text) const {
        return k < sig_.size() && sig_[k]->is(kind, text);
    }

    bool declarator_follows(std::size_t k) const {
        if (k >= sig_.size()) {
            return false;
        }
        const Token& t = *sig_[k];
        if (t.kind == TokenKind::op) {
            return t.text == "=" || t.text == ":";
        }
        if (t.kind == TokenKind::punctuation) {
            if (t.text == "[") {
                return is(k + 1, TokenKind::punctuation, "]");
            }
            return t.text == ";" || t.text == "," || t.text == ")";
        }
        return false;
    }

    /// Whether sig_[k] can be the last token of a type.
    bool type_ends_at(std::size_t k) const {
        const Token& t = *sig_[k];
        switch (t.kind) {
            case TokenKind::identifier:
                return true;
            case TokenKind::keyword:
                return code_model::is_primitive_type(t.text) && t.text != "void";
            case TokenKind::punctuation:
                if (t.text == "...") {
                    return k > 0 && type_ends_at(k - 1);
                }
                return t.text == "]" && k > 0 && is(k - 1, TokenKind::punctuation, "[") &&
                       k >= 2 && type_ends_at(k - 2);
            case TokenKind::op:
                if (t.text == ">" || t.text == ">>" || t.text == ">>>") {
                    return generic_closes_at(k);
                }
                return false;
            default:
                return false;
        }
    }

    /// Walks back over balanced type arguments ending at sig_[k].
    bool generic_closes_at(std::size_t k) const {
        int depth = 0;
        for (std::size_t i = k + 1; i-- > 0;) {
            const Token& t = *sig_[i];
            if (t.kind == TokenKind::op) {
                if (t.text == ">") {
                    depth += 1;
                } else if (t.text == ">>") {
                    depth += 2;
                } else if (t.text == ">>>") {
                    depth += 3;
                } else if (t.text == "<") {
                    if (--depth == 0) {
                        return i > 0 && sig_[i - 1]->kind == TokenKind::identifier;
                    }
                } else if (t.text != "?" && t.text != "&") {
                    return false;
                }
            } else if (t.kind == TokenKind::punctuation) {
                if (t.text != "." && t.text != "," && t.text != "[" && t.text != "]") {
                    return false;
                }
            } else if (t.kind == TokenKind::keyword) {
                if (t.text != "extends" && t.text != "super" && !code_model::is_primitive_type(t.text)) {
                    return false;
                }
            } else if (t.kind != TokenKind::identifier) {
                return false;
            }
        }
        return false;
    }

    /// "(a, b) ->" and "(int a, String b) ->".
    void collect_lambda_params(std::set<std::string>& out) const {
        for (std::size_t k = 1; k < sig_.size(); ++k) {
            if (!sig_[k]->is(TokenKind::op, "->") ||
                !sig_[k - 1]->is(TokenKind::punctuation, ")")) {
                continue;
            }
            int depth = 0;
            std::size_t open = k - 1;
            for (std::size_t i = k; i-- > 0;) {
                if (sig_[i]->is(TokenKind::punctuation, ")")) {
                    ++depth;
                } else if (sig_[i]->is(TokenKind::punctuation, "(")) {
                    if (--depth == 0) {
                        open = i;
                        break;
                    }
                }
            }
            for (std::size_t i = open + 1; i + 1 < k; ++i) {
                if (sig_[i]->kind == TokenKind::identifier &&
                    (sig_[i + 1]->is(TokenKind::punctuation, ",") ||
                     sig_[i + 1]->is(TokenKind::punctuation, ")"))) {
                    out.insert(sig_[i]->text);
                }
            }
        }
    }

    const code_model::TokenStream& all_;
    std::vector<const Token*> sig_;
};

void collect_ast_declarations(const AstNode& n, std::set<std::string>& out) {
    if (n.kind == NodeKind::var_decl) {
        if (const auto* name = n.attr("name")) {
            out.insert(*name);
        }
    }
    for (const auto& c : n.children) {
        collect_ast_declarations(c, out);
    }
}

std::string random_name(std::mt19937_64& rng) {
    // Rejection sampling keeps the letters uniform.
    constexpr std::uint64_t kBound = (std::mt19937_64::max() / 26) * 26;
    std::string s;
    while (s.size() < kFreshNameLength) {
        const std::uint64_t v = rng();
        if (v >= kBound) {
            continue;
        }
        s.push_back(static_cast<char>('a' + v % 26));
    }
    return s;
}

}  // namespace

std::vector<std::string> declared_names(const MethodRecord& record) {
    std::set<std::string> names;
    if (!record.name.empty()) {
        names.insert(record.name);
    }
    DeclarationScanner(record.tokens).collect(names);
    if (record.ast) {
        collect_ast_declarations(*record.ast, names);
    }
    // Keep only names that occur as identifier tokens, in first-occurrence order.
    std::vector<std::string> ordered;
    std::set<std::string> seen;
    for (const auto& t : record.tokens) {
        if (t.kind == TokenKind::identifier && names.count(t.text) && seen.insert(t.text).second) {
            ordered.push_back(t.text);
        }
    }
    return ordered;
}

RenamePlan plan(const MethodRecord& record, std::uint64_t seed) {
    RenamePlan p;
    p.seed = seed;
    p.scope = declared_names(record);
    std::mt19937_64 rng(seed);
    std::set<std::string> used;
    for (const auto& name : p.scope) {
        std::string fresh;
        do {
            fresh = random_name(rng);
        } while (code_model::is_java_keyword(fresh) ||
                 record.source.find(fresh) != std::string::npos || used.count(fresh));
        used.insert(fresh);
        p.mapping.emplace(name, std::move(fresh));
    }
    return p;
}

MethodRecord apply(const MethodRecord& record, const RenamePlan& plan, const ApplyOptions& options) {
    std::string out;
    out.reserve(record.source.size());
    std::string new_name = record.name;
    for (const auto& t : record.tokens) {
        if (t.kind == TokenKind::identifier) {
            auto it = plan.mapping.find(t.text);
            out += it == plan.mapping.end() ? t.text : it->second;
            continue;
        }
        if (options.strip_comments && t.kind == TokenKind::comment) {
            if (t.text.rfind("/*", 0) == 0) {
                out += ' ';
            }
            continue;
        }
        out += t.text;
    }
    if (auto it = plan.mapping.find(record.name); it != plan.mapping.end()) {
        new_name = it->second;
    }
    MethodRecord result = code_model::make_record(record.method_id, record.file_path, new_name, out);
    result.obfuscated = true;
    result.seed = plan.seed;

    std::set<std::string> fresh;
    for (const auto& [from, to] : plan.mapping) {
        if (!fresh.insert(to).second) {
            throw Error("obfuscation produced a duplicate fresh name");
        }
    }
    for (const auto& t : result.tokens) {
        if (t.kind == TokenKind::identifier && plan.mapping.count(t.text) && !fresh.count(t.text)) {
            throw Error("identifier '" + t.text + "' survived obfuscation");
        }
    }
    return result;
}

}  // namespace algorec::obfuscate
