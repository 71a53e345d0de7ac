#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "algorec/code_model/ast.hpp"
#include "algorec/code_model/token.hpp"

namespace algorec::code_model {

/// One extracted method. Immutable after construction; the AST is shared so
/// copies are cheap.
struct MethodRecord {
    std::string method_id;
    std::string file_path;
    std::string name;
    std::string source;
    TokenStream tokens;
    std::shared_ptr<const AstNode> ast;  ///< null when parsing failed
    std::size_t ast_element_count = 0;
    std::vector<std::string> warnings;

    bool obfuscated = false;
    std::optional<std::uint64_t> seed;

    bool has_ast() const { return ast != nullptr; }
};

/// Tokenizes and parses `source`. Throws EncodingError on invalid UTF-8.
MethodRecord make_record(std::string method_id, std::string file_path, std::string name,
                         std::string source);

std::string make_method_id(const std::string& file_path, std::size_t start_line,
                           const std::string& name);

}  // namespace algorec::code_model
