#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "algorec/code_model/ast.hpp"
#include "algorec/code_model/corpus.hpp"
#include "algorec/structural/pattern.hpp"

namespace algorec::testkit {

std::filesystem::path data_dir();
std::filesystem::path fixtures_dir();
std::filesystem::path golden_dir();
std::string read_file(const std::filesystem::path& path);

/// Fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& name);

/// Random tree with `nodes` nodes, kinds drawn uniformly over every NodeKind.
/// Attributes, roles and array indices come from small pools so that shipped
/// patterns have a realistic chance to match.
code_model::AstNode random_ast(std::mt19937_64& rng, std::size_t nodes);

/// Random tree of at most `max_nodes` nodes that contains an instance of
/// one alternative of `pattern`. With `mutate`, one planted node gets a
/// random kind or attribute afterwards, which usually breaks the match.
code_model::AstNode planted_ast(std::mt19937_64& rng, const structural::StructuralPattern& pattern,
                                std::size_t max_nodes, bool mutate);

/// Exhaustive search over every assignment of pattern nodes to AST nodes.
/// Shares no code with the embedder: combinators are resolved up front,
/// attribute matching is reimplemented and captures are only checked once a
/// full assignment exists.
bool brute_force_embed(const structural::StructuralPattern& pattern,
                       const code_model::AstNode& ast);

/// Kind-and-attribute check of a single node, reimplemented for the oracle.
bool oracle_node_matches(const structural::PatternNode& p, const code_model::AstNode& n);

/// Shipped prominent-feature and standalone patterns.
std::vector<structural::StructuralPattern> shipped_structural_patterns();

code_model::Corpus mini_corpus();

/// Path to the built command-line tool.
std::filesystem::path cli_path();

struct CommandResult {
    int exit_code = -1;
    std::string output;  ///< stdout and stderr interleaved
};
CommandResult run_command(const std::string& command);

}  // namespace algorec::testkit
