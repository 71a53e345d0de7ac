#include "algorec/structural/embed.hpp"

#include <algorithm>
#include <optional>

namespace algorec::structural {

using code_model::AstNode;

namespace {

struct Item {
    const PatternNode* node;
    std::optional<Role> role;
};
using Alternative = std::vector<Item>;

/// Expands combinators into alternatives of plain node items. An `or`
/// contributes one branch, an `and` contributes all of its branches as
/// separate siblings.
std::vector<Alternative> expand(const PatternNode& p, std::optional<Role> role) {
    if (p.role) {
        role = p.role;
    }
    switch (p.type) {
        case PatternNode::Type::node:
            return {{Item{&p, role}}};
        case PatternNode::Type::any_of: {
            std::vector<Alternative> out;
            for (const auto& b : p.children) {
                auto alts = expand(b, role);
                out.insert(out.end(), alts.begin(), alts.end());
            }
            return out;
        }
        case PatternNode::Type::all_of: {
            std::vector<Alternative> out{{}};
            for (const auto& b : p.children) {
                const auto alts = expand(b, role);
                std::vector<Alternative> next;
                for (const auto& prefix : out) {
                    for (const auto& a : alts) {
                        Alternative combined = prefix;
                        combined.insert(combined.end(), a.begin(), a.end());
                        next.push_back(std::move(combined));
                    }
                }
                out = std::move(next);
            }
            return out;
        }
    }
    return {};
}

bool merge_into(Environment& env, const Environment& extra) {
    for (const auto& [k, v] : extra) {
        auto [it, inserted] = env.emplace(k, v);
        if (!inserted && it->second != v) {
            return false;
        }
    }
    return true;
}

bool bind_capture(Environment& env, const std::string& name, const std::string& value) {
    auto [it, inserted] = env.emplace(name, value);
    return inserted || it->second == value;
}

struct Solution {
    Environment env;
    std::vector<std::pair<int, std::size_t>> witness;  // pattern id, preorder index
};

class Embedder {
public:
    Embedder(const StructuralPattern& pattern, const AstNode& ast) : pattern_(pattern) {
        flatten(ast, -1);
        memo_.resize(static_cast<std::size_t>(pattern.node_count) * nodes_.size());
        captures_.assign(static_cast<std::size_t>(pattern.node_count), false);
        mark_captures(pattern.root);
        children_cache_.resize(static_cast<std::size_t>(pattern.node_count));
    }

    MatchResult run() {
        MatchResult result;
        const auto alts = expand(pattern_.root, std::nullopt);
        for (const auto& alt : alts) {
            std::vector<Solution> sols;
            const bool first_only =
                pattern_.equalities.empty() || !alternative_has_captures(alt);
            combine(alt, 0, nodes_.size(), Solution{}, {}, sols, first_only);
            for (auto& s : sols) {
                if (equalities_hold(s.env)) {
                    result.matched = true;
                    result.env = std::move(s.env);
                    for (const auto& [pid, idx] : s.witness) {
                        result.witness[pid] = nodes_[idx].node;
                    }
                    return result;
                }
            }
        }
        return result;
    }

private:
    struct Flat {
        const AstNode* node;
        std::size_t end;  // one past the last preorder index of the subtree
        std::vector<std::size_t> children;
    };

    std::size_t flatten(const AstNode& n, long parent) {
        const std::size_t idx = nodes_.size();
        nodes_.push_back({&n, 0, {}});
        if (parent >= 0) {
            nodes_[static_cast<std::size_t>(parent)].children.push_back(idx);
        }
        for (const auto& c : n.children) {
            flatten(c, static_cast<long>(idx));
        }
        nodes_[idx].end = nodes_.size();
        return idx;
    }

    bool mark_captures(const PatternNode& p) {
        bool has = std::any_of(p.attrs.begin(), p.attrs.end(), [](const AttrMatcher& a) {
            if (a.type == AttrMatcher::Type::capture) {
                return true;
            }
            return a.type == AttrMatcher::Type::index_list &&
                   std::any_of(a.items.begin(), a.items.end(),
                               [](const IndexItem& i) { return i.capture; });
        });
        for (const auto& c : p.children) {
            has = mark_captures(c) || has;
        }
        captures_[static_cast<std::size_t>(p.id)] = has;
        return has;
    }

    bool alternative_has_captures(const Alternative& alt) const {
        return std::any_of(alt.begin(), alt.end(), [&](const Item& i) {
            return captures_[static_cast<std::size_t>(i.node->id)];
        });
    }

    bool equalities_hold(const Environment& env) const {
        for (const auto& [a, b] : pattern_.equalities) {
            auto ia = env.find(a);
            auto ib = env.find(b);
            if (ia == env.end() || ib == env.end() || ia->second != ib->second) {
                return false;
            }
        }
        return true;
    }

    /// Candidate AST indices for an item below the node at `parent`.
    void scope(std::size_t parent, const std::optional<Role>& role,
               std::vector<std::size_t>& out) const {
        const Flat& f = nodes_[parent];
        if (!role) {
            for (std::size_t i = parent + 1; i < f.end; ++i) {
                out.push_back(i);
            }
            return;
        }
        for (std::size_t c : f.children) {
            if (nodes_[c].node->role == *role) {
                for (std::size_t i = c; i < nodes_[c].end; ++i) {
                    out.push_back(i);
                }
            }
        }
    }

    const std::vector<Solution>& solve(const PatternNode& p, std::size_t idx) {
        auto& slot = memo_[static_cast<std::size_t>(p.id) * nodes_.size() + idx];
        if (slot) {
            return *slot;
        }
        slot.emplace();
        Solution base;
        if (!node_matches(p, *nodes_[idx].node, base.env)) {
            return *slot;
        }
        base.witness.emplace_back(p.id, idx);
        auto& alts = children_cache_[static_cast<std::size_t>(p.id)];
        if (!alts) {
            alts.emplace();
            std::vector<Alternative> acc{{}};
            for (const auto& c : p.children) {
                const auto child_alts = expand(c, std::nullopt);
                std::vector<Alternative> next;
                for (const auto& prefix : acc) {
                    for (const auto& a : child_alts) {
                        Alternative combined = prefix;
                        combined.insert(combined.end(), a.begin(), a.end());
                        next.push_back(std::move(combined));
                    }
                }
                acc = std::move(next);
            }
            *alts = std::move(acc);
        }
        std::vector<Solution> out;
        for (const auto& alt : *alts) {
            combine(alt, idx, 0, base, {}, out, !alternative_has_captures(alt));
            if (!out.empty() && !captures_[static_cast<std::size_t>(p.id)]) {
                break;
            }
        }
        *slot = std::move(out);
        return *slot;
    }

    /// Backtracking over sibling items. `parent` is the image of the parent
    /// pattern node; when `root_scope` is non-zero every node is a candidate.
    void combine(const Alternative& alt, std::size_t parent, std::size_t root_scope, Solution acc,
                 std::vector<std::size_t> used,
                 std::vector<Solution>& out, bool first_only) {
        if (used.size() == alt.size()) {
            for (const auto& s : out) {
                if (s.env == acc.env) {
                    return;
                }
            }
            out.push_back(std::move(acc));
            return;
        }
        const Item& item = alt[used.size()];
        std::vector<std::size_t> cands;
        if (root_scope > 0) {
            for (std::size_t i = 0; i < root_scope; ++i) {
                cands.push_back(i);
            }
        } else {
            scope(parent, item.role, cands);
        }
        for (std::size_t m : cands) {
            if (std::find(used.begin(), used.end(), m) != used.end()) {
                continue;
            }
            for (const auto& sol : solve(*item.node, m)) {
                Solution next = acc;
                if (!merge_into(next.env, sol.env)) {
                    continue;
                }
                next.witness.insert(next.witness.end(), sol.witness.begin(), sol.witness.end());
                used.push_back(m);
                combine(alt, parent, root_scope, std::move(next), used, out, first_only);
                used.pop_back();
                if (first_only && !out.empty()) {
                    return;
                }
            }
        }
    }

    const StructuralPattern& pattern_;
    std::vector<Flat> nodes_;
    std::vector<std::optional<std::vector<Solution>>> memo_;
    std::vector<bool> captures_;
    std::vector<std::optional<std::vector<Alternative>>> children_cache_;
};

}  // namespace

bool node_matches(const PatternNode& p, const AstNode& n, Environment& env) {
    if (p.type != PatternNode::Type::node) {
        return false;
    }
    if (p.kind && *p.kind != n.kind) {
        return false;
    }
    for (const auto& m : p.attrs) {
        const bool index_key = m.key == "idx" || m.key == "indices";
        std::string value;
        if (index_key) {
            if (n.indices.empty()) {
                return false;
            }
            if (m.type == AttrMatcher::Type::index_list) {
                if (m.items.size() != n.indices.size()) {
                    return false;
                }
                for (std::size_t i = 0; i < m.items.size(); ++i) {
                    const auto& item = m.items[i];
                    if (item.capture ? !bind_capture(env, item.text, n.indices[i])
                                     : item.text != n.indices[i]) {
                        return false;
                    }
                }
                continue;
            }
            for (std::size_t i = 0; i < n.indices.size(); ++i) {
                value += (i ? "," : "") + n.indices[i];
            }
        } else {
            const std::string* v = n.attr(m.key);
            if (!v) {
                return false;
            }
            value = *v;
        }
        switch (m.type) {
            case AttrMatcher::Type::exact:
                if (value != m.text) {
                    return false;
                }
                break;
            case AttrMatcher::Type::regex:
                if (!std::regex_match(value, *m.re)) {
                    return false;
                }
                break;
            case AttrMatcher::Type::capture:
                if (!bind_capture(env, m.text, value)) {
                    return false;
                }
                break;
            case AttrMatcher::Type::index_list:
                return false;  // index lists only apply to idx
        }
    }
    return true;
}

MatchResult embed(const StructuralPattern& pattern, const AstNode& ast) {
    return Embedder(pattern, ast).run();
}

FilterResult filter_corpus(const StructuralPattern& pattern,
                           const std::vector<code_model::MethodRecord>& records) {
    FilterResult out;
    out.decisions.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        StructuralDecision d;
        if (!records[i].has_ast()) {
            d.passed = true;
            d.pass_reason = "parse_failure";
        } else {
            d.match = embed(pattern, *records[i].ast);
            d.passed = d.match.matched;
            if (d.passed) {
                d.pass_reason = "match";
            }
        }
        (d.passed ? out.passed : out.excluded).push_back(i);
        out.decisions.push_back(std::move(d));
    }
    out.reduction = records.empty() ? 0.0
                                    : static_cast<double>(out.excluded.size()) /
                                          static_cast<double>(records.size());
    return out;
}

}  // namespace algorec::structural
