#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "algorec/code_model/ast.hpp"
#include "algorec/code_model/token.hpp"

namespace algorec::code_model {

struct MethodRecord;

struct ParseResult {
    std::optional<AstNode> ast;
    std::size_t recovered_statements = 0;  ///< statements replaced by error nodes
    std::string failure;                   ///< set when `ast` is empty
};

/// Parses one method (header plus body) over the Java subset used by the
/// structural patterns. Unparseable statements become `other` nodes with
/// attrs["error"]="true"; the parse only fails when no method header or
/// balanced body can be found. `method_name` marks recursive calls; when
/// empty the declared name is used.
ParseResult parse_method_tokens(const TokenStream& tokens, std::string_view method_name = {});

std::optional<AstNode> parse_method(const MethodRecord& record);

}  // namespace algorec::code_model
