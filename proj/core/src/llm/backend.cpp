#include "algorec/llm/backend.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "algorec/algorithms.hpp"
#include "algorec/errors.hpp"

namespace algorec::llm {

namespace fs = std::filesystem;

namespace {

std::string strip_whitespace(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            out.push_back(c);
        }
    }
    return out;
}

struct ParsedQuery {
    std::string source;
    std::string algorithm;  // display name as written in the prompt
    bool yes_no = false;
};

/// Recovers method and algorithm from the final user message.
std::optional<ParsedQuery> parse_query(const std::vector<Message>& messages) {
    const Message* last = nullptr;
    for (const auto& m : messages) {
        if (m.role == "user") {
            last = &m;
        }
    }
    if (!last) {
        return std::nullopt;
    }
    const std::string& c = last->content;
    constexpr std::string_view kHead = "SNIPPET: ";
    if (c.rfind(kHead, 0) != 0) {
        return std::nullopt;
    }
    constexpr std::string_view kYesNo = " Does the snippet implement ";
    constexpr std::string_view kYesNoTail = ", only answer with 'Yes' or 'No'?";
    constexpr std::string_view kScore = " Does the code snippet implement the algorithm ";
    ParsedQuery q;
    const auto score_at = c.rfind(kScore);
    const auto yes_no_at = c.rfind(kYesNo);
    if (score_at != std::string::npos &&
        (yes_no_at == std::string::npos || score_at > yes_no_at)) {
        const auto name_begin = score_at + kScore.size();
        const auto name_end = c.find("?\n", name_begin);
        if (name_end == std::string::npos) {
            return std::nullopt;
        }
        q.source = c.substr(kHead.size(), score_at - kHead.size());
        q.algorithm = c.substr(name_begin, name_end - name_begin);
    } else if (yes_no_at != std::string::npos) {
        const auto name_begin = yes_no_at + kYesNo.size();
        const auto name_end = c.rfind(kYesNoTail);
        if (name_end == std::string::npos || name_end < name_begin) {
            return std::nullopt;
        }
        q.source = c.substr(kHead.size(), yes_no_at - kHead.size());
        q.algorithm = c.substr(name_begin, name_end - name_begin);
        q.yes_no = true;
    } else {
        return std::nullopt;
    }
    return q;
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot read " + path.string());
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

MockBackend::MockBackend(std::vector<keyword::KeywordPattern> recall_focused,
                         std::map<std::string, std::string> fixtures) {
    for (auto& p : recall_focused) {
        const std::string algo = p.algorithm;
        patterns_.emplace(algo, std::move(p));
    }
    for (const auto& [algo, text] : fixtures) {
        fingerprints_[algo] = strip_whitespace(text);
    }
}

std::unique_ptr<MockBackend> MockBackend::from_data_dir(const fs::path& data_dir) {
    auto patterns = keyword::load_patterns(data_dir / "patterns" / "keyword" / "recall_focused");
    std::map<std::string, std::string> fixtures;
    for (const auto& a : kAlgorithms) {
        const fs::path f = data_dir / "mock" / "fixtures" / (std::string(a.id) + ".java");
        if (fs::exists(f)) {
            fixtures[std::string(a.id)] = read_text(f);
        }
    }
    return std::make_unique<MockBackend>(std::move(patterns), std::move(fixtures));
}

int MockBackend::score(std::string_view method_source, const std::string& algorithm) const {
    auto fp = fingerprints_.find(algorithm);
    if (fp != fingerprints_.end() && !fp->second.empty() &&
        strip_whitespace(method_source).find(fp->second) != std::string::npos) {
        return 4;
    }
    auto p = patterns_.find(algorithm);
    if (p == patterns_.end()) {
        return 0;
    }
    return static_cast<int>(std::min<std::size_t>(keyword::distinct_hits(p->second, method_source), 3));
}

ChatResponse MockBackend::complete(const ChatRequest& request) {
    ++calls_;
    ChatResponse r;
    r.model = "mock";
    const auto q = parse_query(request.messages);
    if (!q) {
        throw BackendError("mock backend: unrecognised prompt");
    }
    const auto algo = resolve_algorithm(q->algorithm);
    const int s = algo ? score(q->source, *algo) : 0;
    if (q->yes_no) {
        const bool yes = s >= 3;
        r.text = yes ? "Yes" : "No";
        if (request.logprobs) {
            r.first_token_logprobs = std::map<std::string, double>{
                {"Yes", yes ? -0.05 : -3.0}, {"No", yes ? -3.0 : -0.05}, {"The", -6.5}};
        }
        return r;
    }
    if (request.decoding.max_tokens > 1 && !request.logprobs) {
        r.text = "The snippet was compared step by step with the usual structure of " +
                 q->algorithm + ". Final answer: " + std::to_string(s);
        return r;
    }
    r.text = std::to_string(s);
    if (request.logprobs) {
        std::map<std::string, double> lp;
        for (int d = 0; d <= kMaxScore; ++d) {
            lp[std::to_string(d)] = -0.05 - 1.5 * std::abs(d - s);
        }
        lp["Score"] = -8.0;
        r.first_token_logprobs = std::move(lp);
    }
    return r;
}

HttpBackend::Config HttpBackend::config_from_env() {
    auto env = [](const char* name) -> std::string {
        const char* v = std::getenv(name);
        return v ? std::string(v) : std::string();
    };
    Config c;
    c.base_url = env("ALGOREC_API_BASE");
    c.api_key = env("ALGOREC_API_KEY");
    c.model = env("ALGOREC_MODEL");
    if (c.base_url.empty() || c.model.empty()) {
        throw ConfigError("http backend needs ALGOREC_API_BASE and ALGOREC_MODEL");
    }
    try {
        if (const auto t = env("ALGOREC_TIMEOUT_S"); !t.empty()) {
            c.timeout_s = std::stod(t);
        }
        if (const auto t = env("ALGOREC_CONTEXT_TOKENS"); !t.empty()) {
            c.context_tokens = std::stoul(t);
        }
    } catch (const std::exception&) {
        throw ConfigError("ALGOREC_TIMEOUT_S / ALGOREC_CONTEXT_TOKENS must be numbers");
    }
    c.logprobs = env("ALGOREC_NO_LOGPROBS").empty();
    return c;
}

HttpBackend::HttpBackend(Config config) : config_(std::move(config)) {}

ChatResponse HttpBackend::complete(const ChatRequest& request) {
    // Split "https://host:port/prefix" into the client origin and a path prefix.
    const auto scheme_end = config_.base_url.find("://");
    const auto path_start = config_.base_url.find('/', scheme_end == std::string::npos
                                                            ? 0
                                                            : scheme_end + 3);
    const std::string origin = config_.base_url.substr(0, path_start);
    std::string prefix =
        path_start == std::string::npos ? std::string() : config_.base_url.substr(path_start);
    while (!prefix.empty() && prefix.back() == '/') {
        prefix.pop_back();
    }

    nlohmann::json body = {{"model", config_.model},
                           {"temperature", request.decoding.temperature},
                           {"top_p", request.decoding.top_p},
                           {"max_tokens", request.decoding.max_tokens}};
    if (request.decoding.top_k > 0) {
        body["top_k"] = request.decoding.top_k;
    }
    nlohmann::json msgs = nlohmann::json::array();
    for (const auto& m : request.messages) {
        msgs.push_back({{"role", m.role}, {"content", m.content}});
    }
    body["messages"] = msgs;
    if (request.logprobs && config_.logprobs) {
        body["logprobs"] = true;
        body["top_logprobs"] = std::max(request.top_logprobs, 10);
    }

    httplib::Client client(origin);
    const auto secs = static_cast<time_t>(config_.timeout_s);
    const auto usecs = static_cast<time_t>((config_.timeout_s - static_cast<double>(secs)) * 1e6);
    client.set_connection_timeout(secs, usecs);
    client.set_read_timeout(secs, usecs);
    client.set_write_timeout(secs, usecs);
    httplib::Headers headers;
    if (!config_.api_key.empty()) {
        headers.emplace("Authorization", "Bearer " + config_.api_key);
    }
    const auto start = std::chrono::steady_clock::now();
    auto res = client.Post(prefix + "/chat/completions", headers, body.dump(), "application/json");
    const auto stop = std::chrono::steady_clock::now();
    if (!res) {
        throw TransportError("request to " + origin + " failed: " + httplib::to_string(res.error()));
    }
    if (res->status == 429 || res->status >= 500) {
        throw TransportError("backend returned HTTP " + std::to_string(res->status));
    }
    if (res->status != 200) {
        throw BackendError("backend returned HTTP " + std::to_string(res->status) + ": " +
                           res->body.substr(0, 300));
    }
    ChatResponse out;
    out.latency_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    try {
        const auto j = nlohmann::json::parse(res->body);
        const auto& choice = j.at("choices").at(0);
        out.text = choice.at("message").value("content", std::string());
        out.model = j.value("model", config_.model);
        if (choice.contains("logprobs") && choice.at("logprobs").is_object() &&
            choice.at("logprobs").contains("content") &&
            choice.at("logprobs").at("content").is_array() &&
            !choice.at("logprobs").at("content").empty()) {
            const auto& first = choice.at("logprobs").at("content").at(0);
            std::map<std::string, double> lp;
            if (first.contains("top_logprobs")) {
                for (const auto& alt : first.at("top_logprobs")) {
                    lp[alt.at("token").get<std::string>()] = alt.at("logprob").get<double>();
                }
            }
            lp.emplace(first.at("token").get<std::string>(), first.at("logprob").get<double>());
            out.first_token_logprobs = std::move(lp);
        }
    } catch (const nlohmann::json::exception& e) {
        throw BackendError(std::string("unexpected backend response: ") + e.what());
    }
    return out;
}

std::unique_ptr<Backend> make_backend(const std::string& name, const fs::path& data_dir) {
    if (name == "mock") {
        return MockBackend::from_data_dir(data_dir);
    }
    if (name == "http" || name == "openai") {
        return std::make_unique<HttpBackend>(HttpBackend::config_from_env());
    }
    throw ConfigError("unknown backend '" + name + "' (expected mock or http)");
}

}  // namespace algorec::llm
