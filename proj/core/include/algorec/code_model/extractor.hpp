#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "algorec/code_model/method_record.hpp"

namespace algorec::code_model {

struct ExtractResult {
    std::vector<MethodRecord> records;
    std::size_t skipped_regions = 0;  ///< regions dropped because of unbalanced braces
    std::vector<std::string> warnings;
};

/// Finds every method and constructor body in a Java file by brace-balanced
/// scanning. Abstract/interface methods without a body and initializer blocks
/// are skipped; methods of anonymous or local classes stay inside the
/// enclosing record. Throws EncodingError on invalid UTF-8.
ExtractResult extract_methods(std::string_view file_text, const std::string& file_path);

}  // namespace algorec::code_model
