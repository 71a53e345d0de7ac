#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "algorec/code_model/token.hpp"

namespace algorec::code_model {

struct LexResult {
    TokenStream tokens;
    /// Lenient-mode diagnostics (unterminated literal or comment, stray bytes).
    std::vector<std::string> warnings;
};

/// Lossless Java lexer: concatenating the token texts reproduces `source`.
/// Comments and string/char literals are single tokens. Throws EncodingError
/// when `source` is not valid UTF-8.
LexResult tokenize(std::string_view source);

/// Offset of the first invalid byte, or npos when `bytes` is valid UTF-8.
std::size_t find_invalid_utf8(std::string_view bytes);

}  // namespace algorec::code_model
