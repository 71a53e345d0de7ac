#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace algorec::code_model {

enum class NodeKind {
    method,
    block,
    loop,
    if_stmt,
    assign,
    var_decl,
    array_access,
    call,
    return_stmt,
    binary_op,
    unary_op,
    identifier_ref,
    literal,
    other,
};

/// Structural role a node plays inside its parent. Loops and ifs expose
/// `condition` and `body`; assignments and initialised declarations expose
/// `target` and `source`.
enum class Role { none, target, source, condition, body };

std::string_view to_string(NodeKind kind);
std::string_view to_string(Role role);
std::optional<NodeKind> parse_node_kind(std::string_view text);
std::optional<Role> parse_role(std::string_view text);

struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;  ///< one past the last byte

    bool contains(const Span& other) const { return begin <= other.begin && other.end <= end; }
    friend bool operator==(const Span&, const Span&) = default;
};

struct AstNode {
    NodeKind kind = NodeKind::other;
    Role role = Role::none;
    /// op, name, value, recursive, form, ... (see parser for the full set).
    std::map<std::string, std::string, std::less<>> attrs;
    /// Canonical index texts; non-empty only for array_access.
    std::vector<std::string> indices;
    std::vector<AstNode> children;
    Span span;
    /// Compact source text, kept for `other` expressions so they still have a
    /// canonical rendering.
    std::string compact_text;

    const std::string* attr(std::string_view key) const {
        auto it = attrs.find(key);
        return it == attrs.end() ? nullptr : &it->second;
    }
};

std::size_t count_nodes(const AstNode& root);

/// "(method (var-decl) (block (loop ...)))" — kinds only, for tests and debugging.
std::string kind_tree(const AstNode& root);

/// Whitespace- and parenthesisation-normalised rendering of an expression.
/// Structurally identical expressions render identically; no algebraic
/// normalisation is attempted ("i+1" and "1+i" differ).
std::string canonical_index_text(const AstNode& expr);

}  // namespace algorec::code_model
