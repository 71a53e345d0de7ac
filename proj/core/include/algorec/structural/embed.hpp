#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "algorec/code_model/method_record.hpp"
#include "algorec/structural/pattern.hpp"

namespace algorec::structural {

using Environment = std::map<std::string, std::string>;

struct MatchResult {
    bool matched = false;
    /// Pattern node id -> AST node, for the node patterns of the chosen
    /// combinator branches.
    std::map<int, const code_model::AstNode*> witness;
    Environment env;
};

/// Decides whether `pattern` embeds into `ast`:
///  - a node pattern maps to an AST node of its kind whose attributes satisfy
///    every matcher;
///  - a free child maps to a proper descendant of its parent's image;
///  - a role child maps into the subtree of a child of the parent's image
///    that carries the role;
///  - siblings (including the branches of an `and`) map to distinct nodes;
///  - captures with the same name bind identical canonical texts and every
///    declared equality holds.
/// The root may map to any node of the tree.
MatchResult embed(const StructuralPattern& pattern, const code_model::AstNode& ast);

/// Whether a node satisfies kind and attribute matchers of a node pattern,
/// extending `env` with its captures. Returns false on a capture conflict.
bool node_matches(const PatternNode& p, const code_model::AstNode& n, Environment& env);

struct StructuralDecision {
    bool passed = false;
    std::string pass_reason;  ///< "match", "parse_failure" or empty when excluded
    MatchResult match;
};

struct FilterResult {
    std::vector<StructuralDecision> decisions;
    std::vector<std::size_t> passed;
    std::vector<std::size_t> excluded;
    double reduction = 0.0;
};

/// Records without an AST pass (fail-open) with pass_reason "parse_failure".
FilterResult filter_corpus(const StructuralPattern& pattern,
                           const std::vector<code_model::MethodRecord>& records);

}  // namespace algorec::structural
