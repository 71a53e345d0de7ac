#include "algorec/llm/classify.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "algorec/hashing.hpp"

namespace algorec::llm {

namespace fs = std::filesystem;

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) {
        ++b;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) {
        --e;
    }
    return std::string(s.substr(b, e - b));
}

std::string lower(std::string s) {
    for (auto& c : s) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return s;
}

/// Candidate score for one answer token, or -1.
int candidate_score(const std::string& token, Variant variant) {
    const std::string t = trim(token);
    if (variant == Variant::yes_no) {
        const std::string l = lower(t);
        if (l == "yes") {
            return kMaxScore;
        }
        if (l == "no") {
            return 0;
        }
        return -1;
    }
    if (t.size() == 1 && t[0] >= '0' && t[0] <= '0' + kMaxScore) {
        return t[0] - '0';
    }
    return -1;
}

ChatResponse call_with_retries(Backend& backend, const ChatRequest& request,
                               const ClassifyOptions& options) {
    for (int attempt = 0;; ++attempt) {
        try {
            return backend.complete(request);
        } catch (const TransportError&) {
            if (attempt >= options.max_retries) {
                throw;
            }
            const double delay = options.retry_base_delay_s * std::pow(2.0, attempt);
            if (delay > 0) {
                std::this_thread::sleep_for(std::chrono::duration<double>(delay));
            }
        }
    }
}

std::string error_kind(const std::exception& e) {
    if (const auto* d = dynamic_cast<const DecodeError*>(&e)) {
        return d->kind();
    }
    if (dynamic_cast<const ContextOverflowError*>(&e)) {
        return "context_overflow";
    }
    if (dynamic_cast<const TransportError*>(&e)) {
        return "transport";
    }
    if (dynamic_cast<const BackendError*>(&e)) {
        return "backend";
    }
    if (dynamic_cast<const ConfigError*>(&e)) {
        return "config";
    }
    return "error";
}

std::optional<Verdict> cache_read(const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
        return std::nullopt;
    }
    try {
        return verdict_from_json(nlohmann::json::parse(in));
    } catch (const std::exception&) {
        return std::nullopt;  // corrupt entries are recomputed
    }
}

void cache_write(const fs::path& dir, const std::string& key, const Verdict& v) {
    fs::create_directories(dir);
    static std::atomic<unsigned long> counter{0};
    std::ostringstream tmp_name;
    tmp_name << key << ".tmp." << std::hash<std::thread::id>{}(std::this_thread::get_id()) << "."
             << counter++;
    const fs::path tmp = dir / tmp_name.str();
    {
        std::ofstream out(tmp, std::ios::binary);
        out << verdict_to_json(v).dump(2) << '\n';
        if (!out) {
            throw DataError("cannot write cache file " + tmp.string());
        }
    }
    fs::rename(tmp, dir / (key + ".json"));
}

}  // namespace

nlohmann::json verdict_to_json(const Verdict& v) {
    nlohmann::json j = {{"method_id", v.method_id},
                        {"algorithm", v.algorithm},
                        {"raw_score", v.raw_score},
                        {"model", v.model},
                        {"latency_ms", v.latency_ms}};
    if (v.answer_logprobs) {
        j["answer_logprobs"] = *v.answer_logprobs;
    }
    if (v.cot_text) {
        j["cot_text"] = *v.cot_text;
    }
    if (v.lenient_zero) {
        j["lenient_zero"] = true;
    }
    if (!v.warnings.empty()) {
        j["warnings"] = v.warnings;
    }
    return j;
}

Verdict verdict_from_json(const nlohmann::json& j) {
    Verdict v;
    v.method_id = j.at("method_id").get<std::string>();
    v.algorithm = j.at("algorithm").get<std::string>();
    v.raw_score = j.at("raw_score").get<int>();
    if (v.raw_score < 0 || v.raw_score > kMaxScore) {
        throw DataError("verdict raw_score outside 0-4");
    }
    v.model = j.value("model", std::string());
    v.latency_ms = j.value("latency_ms", 0.0);
    if (j.contains("answer_logprobs")) {
        v.answer_logprobs = j.at("answer_logprobs").get<std::map<std::string, double>>();
    }
    if (j.contains("cot_text")) {
        v.cot_text = j.at("cot_text").get<std::string>();
    }
    v.lenient_zero = j.value("lenient_zero", false);
    if (j.contains("warnings")) {
        v.warnings = j.at("warnings").get<std::vector<std::string>>();
    }
    return v;
}

int decode_logprobs(const std::map<std::string, double>& top, Variant variant) {
    int best = -1;
    double best_lp = -INFINITY;
    for (const auto& [token, lp] : top) {
        const int s = candidate_score(token, variant);
        if (s < 0) {
            continue;
        }
        if (best < 0 || lp > best_lp || (lp == best_lp && s < best)) {
            best = s;
            best_lp = lp;
        }
    }
    if (best < 0) {
        throw DecodeError("undecodable", "no candidate answer among the returned logprobs");
    }
    return best;
}

int decode_text_answer(std::string_view text, Variant variant) {
    const std::string t = trim(text);
    std::size_t end = 0;
    while (end < t.size() && std::isalnum(static_cast<unsigned char>(t[end]))) {
        ++end;
    }
    const int s = candidate_score(t.substr(0, end), variant);
    if (s < 0) {
        throw DecodeError("undecodable", "answer '" + t.substr(0, 40) + "' is not a candidate");
    }
    return s;
}

std::optional<int> last_standalone_digit(std::string_view text) {
    auto alnum = [&](std::size_t i) {
        return std::isalnum(static_cast<unsigned char>(text[i])) != 0;
    };
    std::optional<int> found;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c < '0' || c > '0' + kMaxScore) {
            continue;
        }
        if (i > 0 && alnum(i - 1)) {
            continue;
        }
        if (i + 1 < text.size() && alnum(i + 1)) {
            continue;
        }
        // Skip decimals such as "3.5" or "0,5".
        if (i + 2 < text.size() && (text[i + 1] == '.' || text[i + 1] == ',') &&
            std::isdigit(static_cast<unsigned char>(text[i + 2]))) {
            continue;
        }
        if (i >= 2 && (text[i - 1] == '.' || text[i - 1] == ',') &&
            std::isdigit(static_cast<unsigned char>(text[i - 2]))) {
            continue;
        }
        found = c - '0';
    }
    return found;
}

std::size_t estimate_tokens(const std::vector<Message>& messages) {
    std::size_t bytes = 0;
    for (const auto& m : messages) {
        bytes += m.content.size() + m.role.size();
    }
    return (bytes + 3) / 4;
}

Verdict classify(const PromptStyle& style, const std::string& algorithm,
                 const code_model::MethodRecord& method, Backend& backend,
                 const ExampleLibrary* library, const ClassifyOptions& options) {
    ChatRequest request;
    request.messages = build_prompt(style, algorithm, method, library);
    request.decoding = style.decoding;
    const bool single_token = style.variant != Variant::cot;
    if (single_token) {
        request.decoding.max_tokens = 1;
        request.logprobs = true;
        request.top_logprobs = 10;
    }
    const std::size_t needed =
        estimate_tokens(request.messages) + static_cast<std::size_t>(request.decoding.max_tokens);
    if (needed > backend.context_tokens()) {
        throw ContextOverflowError("prompt needs about " + std::to_string(needed) +
                                   " tokens, backend context is " +
                                   std::to_string(backend.context_tokens()));
    }

    const ChatResponse response = call_with_retries(backend, request, options);
    Verdict v;
    v.method_id = method.method_id;
    v.algorithm = algorithm;
    v.model = response.model;
    v.latency_ms = response.latency_ms;
    if (single_token) {
        if (response.first_token_logprobs && backend.supports_logprobs()) {
            v.raw_score = decode_logprobs(*response.first_token_logprobs, style.variant);
            std::map<std::string, double> answers;
            for (const auto& [token, lp] : *response.first_token_logprobs) {
                if (candidate_score(token, style.variant) >= 0) {
                    answers[token] = lp;
                }
            }
            v.answer_logprobs = std::move(answers);
        } else {
            v.raw_score = decode_text_answer(response.text, style.variant);
            v.warnings.push_back("backend returned no logprobs; decoded the answer text");
        }
    } else {
        v.cot_text = response.text;
        const auto digit = last_standalone_digit(response.text);
        if (digit) {
            v.raw_score = *digit;
        } else if (options.lenient) {
            v.raw_score = 0;
            v.lenient_zero = true;
            v.warnings.push_back("no score digit in reasoning; scored 0");
        } else {
            throw DecodeError("unparsable", "no standalone digit 0-4 in the reasoning text");
        }
    }
    return v;
}

std::string cache_key(const std::string& backend_id, const std::string& style_hash_value,
                      const std::string& algorithm, const std::string& method_id,
                      const std::string& source) {
    const nlohmann::json j = {{"backend", backend_id},
                              {"style", style_hash_value},
                              {"algorithm", algorithm},
                              {"method_id", method_id},
                              {"source", sha256_hex(source)}};
    return sha256_hex(j.dump());
}

BatchResult run_batch(const PromptStyle& style, const std::string& algorithm,
                      const std::vector<code_model::MethodRecord>& records, Backend& backend,
                      const ExampleLibrary* library, const BatchOptions& options) {
    if (options.parallelism < 1) {
        throw ConfigError("parallelism must be at least 1");
    }
    BatchResult result;
    result.entries.resize(records.size());
    // Resolve the style once so configuration errors surface before any call.
    const std::string shash = style_hash(style, algorithm, library);
    const std::string backend_id = backend.id();

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next++;
            if (i >= records.size()) {
                return;
            }
            const auto& rec = records[i];
            BatchEntry& entry = result.entries[i];
            entry.method_id = rec.method_id;
            std::string key;
            if (options.cache_dir) {
                key = cache_key(backend_id, shash, algorithm, rec.method_id, rec.source);
                if (auto cached = cache_read(*options.cache_dir / (key + ".json"))) {
                    entry.verdict = std::move(cached);
                    entry.cache_hit = true;
                    continue;
                }
            }
            try {
                entry.verdict = classify(style, algorithm, rec, backend, library, options.classify);
                if (options.cache_dir) {
                    cache_write(*options.cache_dir, key, *entry.verdict);
                }
            } catch (const std::exception& e) {
                entry.verdict.reset();
                entry.error_kind = error_kind(e);
                entry.error = e.what();
            }
        }
    };
    const std::size_t n = std::min(options.parallelism, std::max<std::size_t>(records.size(), 1));
    if (n == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n);
        for (std::size_t t = 0; t < n; ++t) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    for (const auto& e : result.entries) {
        if (e.cache_hit) {
            ++result.cache_hits;
        }
        if (!e.error_kind.empty()) {
            ++result.error_counts[e.error_kind];
        }
        if (e.verdict && e.verdict->lenient_zero) {
            ++result.lenient_zeros;
        }
    }
    return result;
}

}  // namespace algorec::llm
