#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "algorec/code_model/ast.hpp"

namespace algorec::structural {

using code_model::NodeKind;
using code_model::Role;

/// Element of an index list: either a capture (@i) or a literal index text.
struct IndexItem {
    bool capture = false;
    std::string text;  ///< capture name without '@', or the literal text
};

struct AttrMatcher {
    enum class Type { exact, regex, capture, index_list };
    Type type = Type::exact;
    std::string key;
    std::string text;  ///< exact value, regex source or capture name
    std::shared_ptr<const std::regex> re;
    std::vector<IndexItem> items;  ///< for index_list
};

struct PatternNode {
    enum class Type { node, any_of, all_of };
    Type type = Type::node;
    std::optional<NodeKind> kind;  ///< empty means "any"
    std::optional<Role> role;      ///< set on role-restricted children
    std::vector<AttrMatcher> attrs;
    std::vector<PatternNode> children;
    int id = 0;   ///< preorder number, unique within a pattern
    int line = 0;
    int column = 0;
};

struct StructuralPattern {
    std::string algorithm;
    std::string family = "prominent_feature";
    std::string variant;  ///< optional sub-name, e.g. "restrictive"
    bool reconstructed = false;
    PatternNode root;
    std::vector<std::pair<std::string, std::string>> equalities;
    int node_count = 0;  ///< number of ids assigned
};

/// Parses the S-expression pattern language. Throws PatternError with a
/// line/column position on syntax errors, unknown kinds, malformed
/// combinators and equalities over unbound captures.
StructuralPattern parse_dsl(std::string_view text);

StructuralPattern load_pattern(const std::filesystem::path& path);

/// Loads a .pat file or every .pat file in a directory (sorted).
std::vector<StructuralPattern> load_patterns(const std::filesystem::path& path);

/// Renders a pattern node back to DSL text (round-trips through parse_dsl).
std::string to_dsl(const PatternNode& node);

/// Capture names bound anywhere below `node`.
std::vector<std::string> bound_captures(const PatternNode& node);

}  // namespace algorec::structural
