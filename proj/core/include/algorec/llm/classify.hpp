#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "algorec/code_model/method_record.hpp"
#include "algorec/errors.hpp"
#include "algorec/llm/backend.hpp"
#include "algorec/llm/prompt.hpp"

namespace algorec::llm {

/// Answer could not be turned into a score ("undecodable" or "unparsable").
class DecodeError : public BackendError {
public:
    DecodeError(std::string kind, const std::string& what)
        : BackendError(what), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

/// The prompt does not fit the backend's context window.
class ContextOverflowError : public DataError {
public:
    using DataError::DataError;
};

struct Verdict {
    std::string method_id;
    std::string algorithm;
    int raw_score = 0;
    std::optional<std::map<std::string, double>> answer_logprobs;
    std::optional<std::string> cot_text;
    std::string model;
    double latency_ms = 0.0;
    bool lenient_zero = false;  ///< unparsable chain-of-thought scored 0
    std::vector<std::string> warnings;

    friend bool operator==(const Verdict&, const Verdict&) = default;
};

nlohmann::json verdict_to_json(const Verdict& v);
Verdict verdict_from_json(const nlohmann::json& j);

/// Argmax over the candidate answers ("Yes"/"No" or "0".."4") in a top
/// logprob list; ties go to the lower score. Throws DecodeError
/// ("undecodable") when no candidate is present.
int decode_logprobs(const std::map<std::string, double>& top, Variant variant);

/// Score from the first word of a plain-text answer. Throws DecodeError.
int decode_text_answer(std::string_view text, Variant variant);

/// Last digit 0-4 that stands alone (no adjacent letters or digits).
std::optional<int> last_standalone_digit(std::string_view text);

/// Rough token estimate used for the context check: one token per 4 bytes.
std::size_t estimate_tokens(const std::vector<Message>& messages);

struct ClassifyOptions {
    int max_retries = 3;
    double retry_base_delay_s = 1.0;
    bool lenient = false;  ///< score unparsable chain-of-thought as 0
};

Verdict classify(const PromptStyle& style, const std::string& algorithm,
                 const code_model::MethodRecord& method, Backend& backend,
                 const ExampleLibrary* library = nullptr, const ClassifyOptions& options = {});

struct BatchOptions {
    std::size_t parallelism = 1;
    std::optional<std::filesystem::path> cache_dir;
    ClassifyOptions classify;
};

struct BatchEntry {
    std::string method_id;
    std::optional<Verdict> verdict;
    std::string error_kind;  ///< transport, backend, undecodable, unparsable, context_overflow
    std::string error;
    bool cache_hit = false;
};

struct BatchResult {
    std::vector<BatchEntry> entries;  ///< input order
    std::size_t cache_hits = 0;
    std::map<std::string, std::size_t> error_counts;
    std::size_t lenient_zeros = 0;
};

/// Classifies every record with a bounded worker pool. Failures are
/// recorded per entry and never abort the batch. With a cache directory,
/// successful verdicts are stored under a hash of (backend id, style hash,
/// algorithm, method id, source hash) and reused on later runs.
BatchResult run_batch(const PromptStyle& style, const std::string& algorithm,
                      const std::vector<code_model::MethodRecord>& records, Backend& backend,
                      const ExampleLibrary* library = nullptr, const BatchOptions& options = {});

std::string cache_key(const std::string& backend_id, const std::string& style_hash,
                      const std::string& algorithm, const std::string& method_id,
                      const std::string& source);

}  // namespace algorec::llm
