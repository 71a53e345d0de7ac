#include "test_support.hpp"

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <regex>
#include <sstream>

namespace algorec::testkit {

namespace fs = std::filesystem;
using code_model::AstNode;
using code_model::NodeKind;
using code_model::Role;
using structural::AttrMatcher;
using structural::PatternNode;
using structural::StructuralPattern;

fs::path data_dir() { return ALGOREC_TEST_DATA_DIR; }
fs::path fixtures_dir() { return ALGOREC_TEST_FIXTURES_DIR; }
fs::path golden_dir() { return ALGOREC_TEST_GOLDEN_DIR; }

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("algorec_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

namespace {

constexpr std::array kKinds{
    NodeKind::method,      NodeKind::block,     NodeKind::loop,         NodeKind::if_stmt,
    NodeKind::assign,      NodeKind::var_decl,  NodeKind::array_access, NodeKind::call,
    NodeKind::return_stmt, NodeKind::binary_op, NodeKind::unary_op,     NodeKind::identifier_ref,
    NodeKind::literal,     NodeKind::other,
};
constexpr std::array kRoles{Role::none, Role::target, Role::source, Role::condition, Role::body};

const std::vector<std::string> kOps{"/", "+", "-", "%", ">>", ">>>", "==", "!=", "<",
                                    ">", "<=", ">=", "=", "/=", "+="};
const std::vector<std::string> kNames{"charAt", "reverse", "equals", "equalsIgnoreCase",
                                      "i",      "j",       "m",      "t",
                                      "f"};
const std::vector<std::string> kValues{"0", "1", "2"};
const std::vector<std::string> kIndexNames{"i", "j", "m", "k"};

template <class C>
const auto& pick(std::mt19937_64& rng, const C& c) {
    return c[std::uniform_int_distribution<std::size_t>(0, c.size() - 1)(rng)];
}

bool chance(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

void random_attrs(std::mt19937_64& rng, AstNode& n) {
    n.attrs.clear();
    n.indices.clear();
    if (chance(rng, 0.7)) {
        n.attrs["op"] = pick(rng, kOps);
    }
    if (chance(rng, 0.5)) {
        n.attrs["name"] = pick(rng, kNames);
    }
    if (chance(rng, 0.5)) {
        n.attrs["value"] = pick(rng, kValues);
    }
    if (chance(rng, 0.2)) {
        n.attrs["recursive"] = "true";
    }
    if (n.kind == NodeKind::array_access) {
        const int k = chance(rng, 0.5) ? 1 : 2;
        for (int i = 0; i < k; ++i) {
            n.indices.push_back(pick(rng, kIndexNames));
        }
    }
}

AstNode random_node(std::mt19937_64& rng) {
    AstNode n;
    n.kind = pick(rng, kKinds);
    n.role = pick(rng, kRoles);
    random_attrs(rng, n);
    return n;
}

std::vector<AstNode*> preorder(AstNode& root) {
    std::vector<AstNode*> out;
    std::function<void(AstNode&)> walk = [&](AstNode& n) {
        out.push_back(&n);
        for (auto& c : n.children) {
            walk(c);
        }
    };
    walk(root);
    return out;
}

// Combinator-free view of one way to satisfy a pattern.
struct Resolved {
    const PatternNode* p = nullptr;
    std::optional<Role> role;
    std::vector<Resolved> kids;
};
using Forest = std::vector<Resolved>;

std::vector<Forest> resolve(const PatternNode& p, std::optional<Role> role);

std::vector<Forest> product(const std::vector<std::vector<Forest>>& parts) {
    std::vector<Forest> acc{{}};
    for (const auto& options : parts) {
        std::vector<Forest> next;
        for (const auto& prefix : acc) {
            for (const auto& o : options) {
                Forest f = prefix;
                f.insert(f.end(), o.begin(), o.end());
                next.push_back(std::move(f));
            }
        }
        acc = std::move(next);
    }
    return acc;
}

std::vector<Forest> resolve(const PatternNode& p, std::optional<Role> role) {
    if (p.role) {
        role = p.role;
    }
    std::vector<std::vector<Forest>> parts;
    switch (p.type) {
        case PatternNode::Type::node: {
            for (const auto& c : p.children) {
                parts.push_back(resolve(c, std::nullopt));
            }
            std::vector<Forest> out;
            for (auto& kids : product(parts)) {
                out.push_back({Resolved{&p, role, std::move(kids)}});
            }
            return out;
        }
        case PatternNode::Type::any_of: {
            std::vector<Forest> out;
            for (const auto& b : p.children) {
                auto r = resolve(b, role);
                out.insert(out.end(), r.begin(), r.end());
            }
            return out;
        }
        case PatternNode::Type::all_of:
            for (const auto& b : p.children) {
                parts.push_back(resolve(b, role));
            }
            return product(parts);
    }
    return {};
}

struct FlatPattern {
    const PatternNode* p;
    std::optional<Role> role;
    int parent;
};

void flatten_forest(const Forest& f, int parent, std::vector<FlatPattern>& out) {
    for (const auto& r : f) {
        const int idx = static_cast<int>(out.size());
        out.push_back({r.p, r.role, parent});
        flatten_forest(r.kids, idx, out);
    }
}

struct FlatAst {
    const AstNode* node;
    std::size_t end;
    long parent;
};

void flatten_ast(const AstNode& n, long parent, std::vector<FlatAst>& out) {
    const std::size_t idx = out.size();
    out.push_back({&n, 0, parent});
    for (const auto& c : n.children) {
        flatten_ast(c, static_cast<long>(idx), out);
    }
    out[idx].end = out.size();
}

std::string joined_indices(const AstNode& n) {
    std::string s;
    for (std::size_t i = 0; i < n.indices.size(); ++i) {
        s += (i ? "," : "") + n.indices[i];
    }
    return s;
}

bool is_index_key(const std::string& key) { return key == "idx" || key == "indices"; }

/// Capture bindings contributed by one mapped node.
void collect_bindings(const PatternNode& p, const AstNode& n,
                      std::vector<std::pair<std::string, std::string>>& out) {
    for (const auto& m : p.attrs) {
        if (m.type == AttrMatcher::Type::capture) {
            out.emplace_back(m.text, is_index_key(m.key) ? joined_indices(n) : *n.attr(m.key));
        } else if (m.type == AttrMatcher::Type::index_list) {
            for (std::size_t i = 0; i < m.items.size(); ++i) {
                if (m.items[i].capture) {
                    out.emplace_back(m.items[i].text, n.indices[i]);
                }
            }
        }
    }
}

class BruteForce {
public:
    BruteForce(const StructuralPattern& pattern, const AstNode& ast) : pattern_(pattern) {
        flatten_ast(ast, -1, ast_);
    }

    bool run() {
        for (const auto& forest : resolve(pattern_.root, std::nullopt)) {
            nodes_.clear();
            flatten_forest(forest, -1, nodes_);
            image_.assign(nodes_.size(), 0);
            if (assign(0)) {
                return true;
            }
        }
        return false;
    }

private:
    bool in_scope(std::size_t k, std::size_t cand) const {
        const auto& fp = nodes_[k];
        if (fp.parent < 0) {
            return true;
        }
        const std::size_t par = image_[static_cast<std::size_t>(fp.parent)];
        if (!fp.role) {
            return cand > par && cand < ast_[par].end;
        }
        // Walk up from the candidate to the child of `par` it lives under.
        std::size_t c = cand;
        while (ast_[c].parent >= 0 && static_cast<std::size_t>(ast_[c].parent) != par) {
            c = static_cast<std::size_t>(ast_[c].parent);
        }
        return ast_[c].parent >= 0 && static_cast<std::size_t>(ast_[c].parent) == par &&
               ast_[c].node->role == *fp.role;
    }

    bool distinct_from_siblings(std::size_t k, std::size_t cand) const {
        for (std::size_t o = 0; o < k; ++o) {
            if (nodes_[o].parent == nodes_[k].parent && image_[o] == cand) {
                return false;
            }
        }
        return true;
    }

    bool environment_holds() const {
        std::vector<std::pair<std::string, std::string>> bindings;
        for (std::size_t k = 0; k < nodes_.size(); ++k) {
            collect_bindings(*nodes_[k].p, *ast_[image_[k]].node, bindings);
        }
        std::map<std::string, std::string> env;
        for (const auto& [name, value] : bindings) {
            auto [it, inserted] = env.emplace(name, value);
            if (!inserted && it->second != value) {
                return false;
            }
        }
        for (const auto& [a, b] : pattern_.equalities) {
            auto ia = env.find(a);
            auto ib = env.find(b);
            if (ia == env.end() || ib == env.end() || ia->second != ib->second) {
                return false;
            }
        }
        return true;
    }

    bool assign(std::size_t k) {
        if (k == nodes_.size()) {
            return environment_holds();
        }
        for (std::size_t cand = 0; cand < ast_.size(); ++cand) {
            if (!in_scope(k, cand) || !distinct_from_siblings(k, cand) ||
                !oracle_node_matches(*nodes_[k].p, *ast_[cand].node)) {
                continue;
            }
            image_[k] = cand;
            if (assign(k + 1)) {
                return true;
            }
        }
        return false;
    }

    const StructuralPattern& pattern_;
    std::vector<FlatAst> ast_;
    std::vector<FlatPattern> nodes_;
    std::vector<std::size_t> image_;
};

// Instantiation of a resolved pattern for planting.
struct Planter {
    std::mt19937_64& rng;
    const StructuralPattern& pattern;
    std::map<std::string, std::string> env;
    std::size_t budget;

    std::string capture_value(const std::string& name) {
        if (auto it = env.find(name); it != env.end()) {
            return it->second;
        }
        for (const auto& [a, b] : pattern.equalities) {
            const std::string& other = a == name ? b : (b == name ? a : std::string());
            if (!other.empty() && env.count(other)) {
                return env[name] = env[other];
            }
        }
        return env[name] = pick(rng, kIndexNames);
    }

    std::string regex_value(const AttrMatcher& m, const std::vector<std::string>& pool) {
        std::vector<std::string> ok;
        for (const auto& v : pool) {
            if (std::regex_match(v, *m.re)) {
                ok.push_back(v);
            }
        }
        return ok.empty() ? pool.front() : pick(rng, ok);
    }

    AstNode make(const Resolved& r) {
        AstNode n;
        n.kind = r.p->kind ? *r.p->kind : pick(rng, kKinds);
        n.role = pick(rng, kRoles);
        for (const auto& m : r.p->attrs) {
            if (is_index_key(m.key)) {
                n.indices.clear();
                if (m.type == AttrMatcher::Type::index_list) {
                    for (const auto& item : m.items) {
                        n.indices.push_back(item.capture ? capture_value(item.text) : item.text);
                    }
                } else {
                    std::string v = m.type == AttrMatcher::Type::exact ? m.text
                                    : m.type == AttrMatcher::Type::regex
                                        ? regex_value(m, {"i", "j", "m", "i,j", "j,i"})
                                        : capture_value(m.text);
                    std::stringstream ss(v);
                    for (std::string part; std::getline(ss, part, ',');) {
                        n.indices.push_back(part);
                    }
                }
                continue;
            }
            std::vector<std::string> pool = kOps;
            pool.insert(pool.end(), kNames.begin(), kNames.end());
            pool.insert(pool.end(), kValues.begin(), kValues.end());
            pool.push_back("true");
            switch (m.type) {
                case AttrMatcher::Type::exact: n.attrs[m.key] = m.text; break;
                case AttrMatcher::Type::regex: n.attrs[m.key] = regex_value(m, pool); break;
                case AttrMatcher::Type::capture: n.attrs[m.key] = capture_value(m.text); break;
                case AttrMatcher::Type::index_list: break;
            }
        }
        for (const auto& kid : r.kids) {
            AstNode child = make(kid);
            if (kid.role) {
                child.role = *kid.role;
                if (budget > 0 && chance(rng, 0.3)) {
                    // Put the match one level below the role-carrying child.
                    AstNode wrap = random_node(rng);
                    wrap.role = *kid.role;
                    child.role = pick(rng, kRoles);
                    wrap.children.push_back(std::move(child));
                    child = std::move(wrap);
                    --budget;
                }
            } else if (budget > 0 && chance(rng, 0.3)) {
                AstNode wrap = random_node(rng);
                wrap.children.push_back(std::move(child));
                child = std::move(wrap);
                --budget;
            }
            n.children.push_back(std::move(child));
        }
        return n;
    }
};

}  // namespace

AstNode random_ast(std::mt19937_64& rng, std::size_t nodes) {
    AstNode root = random_node(rng);
    // Random recursive tree: each new node hangs below a uniformly chosen one.
    std::vector<std::vector<std::size_t>> kids(1);
    std::vector<AstNode> flat{root};
    for (std::size_t i = 1; i < nodes; ++i) {
        const auto parent = std::uniform_int_distribution<std::size_t>(0, i - 1)(rng);
        kids[parent].push_back(i);
        kids.emplace_back();
        flat.push_back(random_node(rng));
    }
    std::function<AstNode(std::size_t)> build = [&](std::size_t i) {
        AstNode n = flat[i];
        for (std::size_t c : kids[i]) {
            n.children.push_back(build(c));
        }
        return n;
    };
    return build(0);
}

AstNode planted_ast(std::mt19937_64& rng, const StructuralPattern& pattern, std::size_t max_nodes,
                    bool mutate) {
    const auto alternatives = resolve(pattern.root, std::nullopt);
    const Forest& forest = pick(rng, alternatives);
    Planter planter{rng, pattern, {}, 6};
    std::vector<AstNode> pieces;
    std::size_t used = 0;
    for (const auto& r : forest) {
        pieces.push_back(planter.make(r));
        used += code_model::count_nodes(pieces.back());
    }
    const std::size_t host_size = used + 1 >= max_nodes
                                      ? 1
                                      : std::uniform_int_distribution<std::size_t>(
                                            1, max_nodes - used)(rng);
    AstNode host = random_ast(rng, host_size);
    for (auto& piece : pieces) {
        auto nodes = preorder(host);
        AstNode* at = pick(rng, nodes);
        const auto pos =
            std::uniform_int_distribution<std::size_t>(0, at->children.size())(rng);
        at->children.insert(at->children.begin() + static_cast<long>(pos), std::move(piece));
    }
    if (mutate) {
        auto nodes = preorder(host);
        AstNode* victim = pick(rng, nodes);
        switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
            case 0: victim->kind = pick(rng, kKinds); break;
            case 1: random_attrs(rng, *victim); break;
            default:
                if (!victim->indices.empty()) {
                    std::reverse(victim->indices.begin(), victim->indices.end());
                } else {
                    victim->role = pick(rng, kRoles);
                }
        }
    }
    return host;
}

bool oracle_node_matches(const PatternNode& p, const AstNode& n) {
    if (p.type != PatternNode::Type::node || (p.kind && *p.kind != n.kind)) {
        return false;
    }
    for (const auto& m : p.attrs) {
        std::string value;
        if (is_index_key(m.key)) {
            if (n.indices.empty()) {
                return false;
            }
            if (m.type == AttrMatcher::Type::index_list) {
                if (m.items.size() != n.indices.size()) {
                    return false;
                }
                for (std::size_t i = 0; i < m.items.size(); ++i) {
                    if (!m.items[i].capture && m.items[i].text != n.indices[i]) {
                        return false;
                    }
                }
                continue;
            }
            value = joined_indices(n);
        } else {
            const std::string* v = n.attr(m.key);
            if (!v) {
                return false;
            }
            value = *v;
        }
        if (m.type == AttrMatcher::Type::exact && value != m.text) {
            return false;
        }
        if (m.type == AttrMatcher::Type::regex && !std::regex_match(value, std::regex(m.text))) {
            return false;
        }
        if (m.type == AttrMatcher::Type::index_list) {
            return false;
        }
    }
    return true;
}

bool brute_force_embed(const StructuralPattern& pattern, const AstNode& ast) {
    return BruteForce(pattern, ast).run();
}

std::vector<StructuralPattern> shipped_structural_patterns() {
    auto out = structural::load_patterns(data_dir() / "patterns" / "structural" / "prominent_feature");
    auto standalone = structural::load_patterns(data_dir() / "patterns" / "structural" / "standalone");
    out.insert(out.end(), standalone.begin(), standalone.end());
    return out;
}

code_model::Corpus mini_corpus() {
    return code_model::load_corpus(data_dir() / "mini_corpus" / "corpus.jsonl").records;
}

fs::path cli_path() { return ALGOREC_TEST_CLI; }

CommandResult run_command(const std::string& command) {
    CommandResult r;
    FILE* pipe = popen((command + " 2>&1").c_str(), "r");
    if (!pipe) {
        return r;
    }
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        r.output.append(buf.data(), n);
    }
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace algorec::testkit
