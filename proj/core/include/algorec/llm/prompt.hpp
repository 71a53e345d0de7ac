#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "algorec/code_model/method_record.hpp"

namespace algorec::llm {

/// Highest score on the rubric. Only the 0-4 scale is supported.
inline constexpr int kMaxScore = 4;

enum class Variant { yes_no, score, icl, cot };

struct DecodingParams {
    double temperature = 0.0;
    int top_k = 0;  ///< 0 means "not sent"
    double top_p = 1.0;
    int max_tokens = 1;

    friend bool operator==(const DecodingParams&, const DecodingParams&) = default;
};

/// Decoding used by the chain-of-thought style.
inline constexpr DecodingParams kCotDecoding{0.5, 50, 0.9, 300};

enum class NegativeKind { similar, random };

struct PromptStyle {
    Variant variant = Variant::score;
    int icl_positives = 0;
    int icl_negatives = 0;
    NegativeKind negatives = NegativeKind::similar;
    DecodingParams decoding;

    /// "yesno", "score", "cot", "icl:2p2n" or "icl:0p2n:random".
    std::string name() const;
};

/// Parses a style name as accepted on the command line. Throws ConfigError.
PromptStyle parse_style(std::string_view name);

struct Message {
    std::string role;
    std::string content;

    friend bool operator==(const Message&, const Message&) = default;
};

struct Example {
    std::string id;
    std::string source;
    int score = 0;
};

/// Scored example methods for in-context prompts. Positives score 4, similar
/// negatives 1 and random negatives 0 unless the file states a score.
class ExampleLibrary {
public:
    ExampleLibrary() = default;
    static ExampleLibrary load(const std::filesystem::path& path);

    void add_positive(const std::string& algorithm, Example e);
    void add_similar_negative(const std::string& algorithm, Example e);
    void add_random_negative(Example e);

    const std::vector<Example>& positives(const std::string& algorithm) const;
    const std::vector<Example>& similar_negatives(const std::string& algorithm) const;
    const std::vector<Example>& random_negatives() const { return random_; }

    /// The first `style.icl_positives` positives followed by the first
    /// `style.icl_negatives` negatives of the requested kind. Throws
    /// ConfigError when the library holds too few.
    std::vector<Example> select(const PromptStyle& style, const std::string& algorithm) const;

private:
    std::map<std::string, std::vector<Example>> positives_;
    std::map<std::string, std::vector<Example>> similar_;
    std::vector<Example> random_;
};

std::string yes_no_prompt(std::string_view method_source, std::string_view algorithm_name);
std::string score_prompt(std::string_view method_source, std::string_view algorithm_name,
                         bool step_by_step = false);

/// Messages for one classification request. `algorithm` is a canonical id;
/// its display name is used in the text. `library` is required for icl.
std::vector<Message> build_prompt(const PromptStyle& style, const std::string& algorithm,
                                  const code_model::MethodRecord& method,
                                  const ExampleLibrary* library = nullptr);

/// Content hash of everything that shapes the prompt except the query
/// method: variant, decoding, and the selected examples in order.
std::string style_hash(const PromptStyle& style, const std::string& algorithm,
                       const ExampleLibrary* library);

}  // namespace algorec::llm
