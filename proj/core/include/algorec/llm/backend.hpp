#pragma once

#include <atomic>
#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "algorec/keyword/keyword_filter.hpp"
#include "algorec/llm/prompt.hpp"

namespace algorec::llm {

struct ChatRequest {
    std::vector<Message> messages;
    DecodingParams decoding;
    bool logprobs = false;
    int top_logprobs = 0;
};

struct ChatResponse {
    std::string text;
    /// Top alternatives at the first generated position, token -> logprob.
    std::optional<std::map<std::string, double>> first_token_logprobs;
    std::string model;
    double latency_ms = 0.0;
};

/// Chat-completion backend. Implementations must be safe to call from
/// several threads at once.
class Backend {
public:
    virtual ~Backend() = default;
    virtual std::string id() const = 0;
    virtual bool supports_logprobs() const { return true; }
    /// Context window in tokens.
    virtual std::size_t context_tokens() const { return 128000; }
    /// Throws TransportError for retryable failures, BackendError otherwise.
    virtual ChatResponse complete(const ChatRequest& request) = 0;
};

/// Deterministic stand-in for a model. The score of a query is 4 when the
/// method contains the algorithm's reference fixture (whitespace ignored),
/// otherwise the number of distinct Recall Focused keywords it hits, capped
/// at 3. Yes/No answers "Yes" for scores of 3 and 4.
class MockBackend : public Backend {
public:
    MockBackend(std::vector<keyword::KeywordPattern> recall_focused,
                std::map<std::string, std::string> fixtures);

    /// Reads patterns/keyword/recall_focused and mock/fixtures/<algorithm>.java.
    static std::unique_ptr<MockBackend> from_data_dir(const std::filesystem::path& data_dir);

    std::string id() const override { return "mock"; }
    ChatResponse complete(const ChatRequest& request) override;

    /// The heuristic itself, for tests and oracles.
    int score(std::string_view method_source, const std::string& algorithm) const;

    std::size_t calls() const { return calls_.load(); }

private:
    std::map<std::string, keyword::KeywordPattern> patterns_;
    std::map<std::string, std::string> fingerprints_;  // whitespace-free fixture text
    std::atomic<std::size_t> calls_{0};
};

/// OpenAI-compatible chat-completions endpoint over HTTP(S).
class HttpBackend : public Backend {
public:
    struct Config {
        std::string base_url;  ///< e.g. https://api.openai.com/v1
        std::string api_key;
        std::string model;
        double timeout_s = 60.0;
        std::size_t context_tokens = 128000;
        bool logprobs = true;
    };

    /// ALGOREC_API_BASE, ALGOREC_API_KEY, ALGOREC_MODEL, ALGOREC_TIMEOUT_S,
    /// ALGOREC_CONTEXT_TOKENS, ALGOREC_NO_LOGPROBS. Throws ConfigError when
    /// base URL or model are missing.
    static Config config_from_env();

    explicit HttpBackend(Config config);

    std::string id() const override { return "http:" + config_.model; }
    bool supports_logprobs() const override { return config_.logprobs; }
    std::size_t context_tokens() const override { return config_.context_tokens; }
    ChatResponse complete(const ChatRequest& request) override;

private:
    Config config_;
};

/// "mock" or "http" (configured from the environment). Throws ConfigError.
std::unique_ptr<Backend> make_backend(const std::string& name,
                                      const std::filesystem::path& data_dir);

}  // namespace algorec::llm
