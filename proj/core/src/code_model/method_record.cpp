#include "algorec/code_model/method_record.hpp"

#include "algorec/code_model/lexer.hpp"
#include "algorec/code_model/parser.hpp"

namespace algorec::code_model {

MethodRecord make_record(std::string method_id, std::string file_path, std::string name,
                         std::string source) {
    MethodRecord r;
    r.method_id = std::move(method_id);
    r.file_path = std::move(file_path);
    r.name = std::move(name);
    r.source = std::move(source);
    LexResult lex = tokenize(r.source);
    r.tokens = std::move(lex.tokens);
    r.warnings = std::move(lex.warnings);
    ParseResult parsed = parse_method_tokens(r.tokens, r.name);
    if (parsed.ast) {
        r.ast_element_count = count_nodes(*parsed.ast);
        r.ast = std::make_shared<const AstNode>(std::move(*parsed.ast));
        if (parsed.recovered_statements > 0) {
            r.warnings.push_back("recovered from " + std::to_string(parsed.recovered_statements) +
                                 " unparseable statement(s)");
        }
    } else {
        r.warnings.push_back("parse failure: " + parsed.failure);
    }
    return r;
}

std::string make_method_id(const std::string& file_path, std::size_t start_line,
                           const std::string& name) {
    return file_path + ":" + std::to_string(start_line) + ":" + name;
}

}  // namespace algorec::code_model
