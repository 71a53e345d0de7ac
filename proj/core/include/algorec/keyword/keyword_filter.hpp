#pragma once

#include <cstddef>
#include <filesystem>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "algorec/code_model/method_record.hpp"

namespace algorec::keyword {

enum class Combinator { any_of, all_of };
enum class Family { recall_focused, recall_focused_enhanced };

std::string_view to_string(Combinator c);
std::string_view to_string(Family f);

/// One keyword. Plain words (letters, digits, underscore) match whole
/// identifier segments: "sort" hits "bubbleSort" and "bubble_sort" but not
/// "sorted". Anything else is an ECMAScript regex searched verbatim, with
/// '.' also matching line breaks. Both forms ignore case.
class KeywordRegex {
public:
    explicit KeywordRegex(std::string source);

    const std::string& source() const { return source_; }
    bool is_plain_word() const { return plain_; }
    bool matches(std::string_view text) const;

private:
    std::string source_;
    std::string folded_;  // lower-cased plain word
    bool plain_ = false;
    std::regex re_;
};

struct KeywordGroup {
    std::vector<KeywordRegex> regexes;
    std::size_t threshold = 1;
};

struct KeywordPattern {
    std::string algorithm;  ///< canonical algorithm id
    Family family = Family::recall_focused;
    Combinator combinator = Combinator::any_of;
    std::vector<KeywordGroup> groups;
    bool reconstructed = false;
};

/// Builds a pattern from one pattern-file object. Throws PatternError on an
/// invalid regex, a threshold outside [1, |regexes|], an empty group or an
/// unknown algorithm.
KeywordPattern compile_pattern(const nlohmann::json& spec);

/// Accepts a pattern file holding one object or an array of objects, or a
/// directory of such files (read in sorted order).
std::vector<KeywordPattern> load_patterns(const std::filesystem::path& path);

nlohmann::json pattern_to_json(const KeywordPattern& pattern);

struct KeywordDecision {
    bool passed = false;
    std::vector<std::size_t> group_hits;  ///< distinct regexes hit, per group
    std::vector<bool> group_satisfied;
};

KeywordDecision evaluate(const KeywordPattern& pattern, std::string_view source);
inline KeywordDecision evaluate(const KeywordPattern& pattern,
                                const code_model::MethodRecord& record) {
    return evaluate(pattern, record.source);
}

/// Number of distinct regexes, across all groups, that hit `source`.
std::size_t distinct_hits(const KeywordPattern& pattern, std::string_view source);

struct FilterResult {
    std::vector<KeywordDecision> decisions;  ///< one per input record
    std::vector<std::size_t> passed;         ///< input indices, in order
    std::vector<std::size_t> excluded;
    double reduction = 0.0;  ///< |excluded| / |records|, 0 for an empty corpus
};

FilterResult filter_corpus(const KeywordPattern& pattern,
                           const std::vector<code_model::MethodRecord>& records);

}  // namespace algorec::keyword
