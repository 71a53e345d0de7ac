#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "algorec/code_model/method_record.hpp"

namespace algorec::obfuscate {

/// Length of generated identifiers.
inline constexpr std::size_t kFreshNameLength = 8;

struct RenamePlan {
    std::uint64_t seed = 0;
    /// Declared names in order of first occurrence in the source.
    std::vector<std::string> scope;
    std::map<std::string, std::string> mapping;
};

/// Names declared inside the method: its own name, parameters, locals, loop
/// and catch variables, lambda and pattern variables. Works from tokens and
/// adds the AST's declarations when one is available.
std::vector<std::string> declared_names(const code_model::MethodRecord& record);

/// Draws one fresh lowercase name per declared name from a 64-bit Mersenne
/// Twister seeded with `seed`. Fresh names are never Java keywords, never
/// occur anywhere in the original source and are pairwise distinct.
RenamePlan plan(const code_model::MethodRecord& record, std::uint64_t seed);

struct ApplyOptions {
    bool strip_comments = false;
};

/// Replaces every identifier token whose text is in the plan's scope and
/// re-tokenizes and re-parses the result. The method id is kept; the record
/// is marked obfuscated with the plan's seed.
code_model::MethodRecord apply(const code_model::MethodRecord& record, const RenamePlan& plan,
                               const ApplyOptions& options = {});

inline code_model::MethodRecord obfuscate(const code_model::MethodRecord& record,
                                          std::uint64_t seed, const ApplyOptions& options = {}) {
    return apply(record, plan(record, seed), options);
}

}  // namespace algorec::obfuscate
