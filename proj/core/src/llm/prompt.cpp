#include "algorec/llm/prompt.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "algorec/algorithms.hpp"
#include "algorec/errors.hpp"
#include "algorec/hashing.hpp"

namespace algorec::llm {

namespace {

constexpr std::string_view kRubric =
    "Score the snippet from '0' to '4', where:\n"
    "0: The code does not implement the algorithm.\n"
    "1: The code shares similarities with the algorithm but most likely does not implement the "
    "algorithm.\n"
    "2: The code appears to implement the algorithm, but may not fully match the algorithm's "
    "specification.\n"
    "3: The code most likely implements the algorithm with minor variations.\n"
    "4: The code implements the algorithm.\n";

constexpr std::string_view kStrictInstruction =
    "Strictly respond with a number from the choices above.";
constexpr std::string_view kStepByStepInstruction =
    "Lets think step-by-step, then answer with a number from the choices above.";

const std::vector<Example> kNoExamples;

std::vector<Example> read_examples(const nlohmann::json& arr, int default_score,
                                   const std::string& where) {
    std::vector<Example> out;
    if (!arr.is_array()) {
        throw DataError(where + " must be an array");
    }
    for (const auto& e : arr) {
        Example ex;
        ex.id = e.value("id", std::string());
        ex.source = e.value("source", std::string());
        ex.score = e.value("score", default_score);
        if (ex.id.empty() || ex.source.empty()) {
            throw DataError(where + ": example needs 'id' and 'source'");
        }
        if (ex.score < 0 || ex.score > kMaxScore) {
            throw DataError(where + ": example '" + ex.id + "' has score outside 0-4");
        }
        out.push_back(std::move(ex));
    }
    return out;
}

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::yes_no: return "yesno";
        case Variant::score: return "score";
        case Variant::icl: return "icl";
        case Variant::cot: return "cot";
    }
    return "?";
}

}  // namespace

std::string PromptStyle::name() const {
    if (variant != Variant::icl) {
        return variant_name(variant);
    }
    std::string n = "icl:" + std::to_string(icl_positives) + "p" + std::to_string(icl_negatives) +
                    "n";
    if (negatives == NegativeKind::random) {
        n += ":random";
    }
    return n;
}

PromptStyle parse_style(std::string_view name) {
    PromptStyle s;
    if (name == "score") {
        s.variant = Variant::score;
    } else if (name == "yesno" || name == "yes_no" || name == "yes-no") {
        s.variant = Variant::yes_no;
    } else if (name == "cot") {
        s.variant = Variant::cot;
        s.decoding = kCotDecoding;
    } else if (name.substr(0, 4) == "icl:") {
        s.variant = Variant::icl;
        std::string_view rest = name.substr(4);
        std::string_view combo = rest.substr(0, rest.find(':'));
        if (rest.size() > combo.size()) {
            const std::string_view kind = rest.substr(combo.size() + 1);
            if (kind == "random") {
                s.negatives = NegativeKind::random;
            } else if (kind != "similar") {
                throw ConfigError("unknown negative kind '" + std::string(kind) + "'");
            }
        }
        if (combo == "0p2n") {
            s.icl_negatives = 2;
        } else if (combo == "2p0n") {
            s.icl_positives = 2;
        } else if (combo == "2p2n") {
            s.icl_positives = 2;
            s.icl_negatives = 2;
        } else if (combo == "4p4n") {
            s.icl_positives = 4;
            s.icl_negatives = 4;
        } else {
            throw ConfigError("unsupported in-context combination '" + std::string(combo) +
                              "' (expected 0p2n, 2p0n, 2p2n or 4p4n)");
        }
    } else {
        throw ConfigError("unknown prompt style '" + std::string(name) + "'");
    }
    return s;
}

ExampleLibrary ExampleLibrary::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot read example library " + path.string());
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw DataError(path.string() + ": malformed JSON: " + e.what());
    }
    ExampleLibrary lib;
    if (doc.contains("algorithms")) {
        for (const auto& [name, entry] : doc.at("algorithms").items()) {
            const auto id = resolve_algorithm(name);
            if (!id) {
                throw DataError(path.string() + ": unknown algorithm '" + name + "'");
            }
            if (entry.contains("positives")) {
                lib.positives_[*id] = read_examples(entry.at("positives"), 4, name + ".positives");
            }
            if (entry.contains("similar_negatives")) {
                lib.similar_[*id] =
                    read_examples(entry.at("similar_negatives"), 1, name + ".similar_negatives");
            }
        }
    }
    if (doc.contains("random_negatives")) {
        lib.random_ = read_examples(doc.at("random_negatives"), 0, "random_negatives");
    }
    return lib;
}

void ExampleLibrary::add_positive(const std::string& algorithm, Example e) {
    positives_[algorithm].push_back(std::move(e));
}

void ExampleLibrary::add_similar_negative(const std::string& algorithm, Example e) {
    similar_[algorithm].push_back(std::move(e));
}

void ExampleLibrary::add_random_negative(Example e) { random_.push_back(std::move(e)); }

const std::vector<Example>& ExampleLibrary::positives(const std::string& algorithm) const {
    auto it = positives_.find(algorithm);
    return it == positives_.end() ? kNoExamples : it->second;
}

const std::vector<Example>& ExampleLibrary::similar_negatives(const std::string& algorithm) const {
    auto it = similar_.find(algorithm);
    return it == similar_.end() ? kNoExamples : it->second;
}

std::vector<Example> ExampleLibrary::select(const PromptStyle& style,
                                            const std::string& algorithm) const {
    const auto& pos = positives(algorithm);
    const auto& neg =
        style.negatives == NegativeKind::similar ? similar_negatives(algorithm) : random_;
    const auto np = static_cast<std::size_t>(style.icl_positives);
    const auto nn = static_cast<std::size_t>(style.icl_negatives);
    if (pos.size() < np || neg.size() < nn) {
        throw ConfigError("example library has " + std::to_string(pos.size()) + " positive and " +
                          std::to_string(neg.size()) + " negative examples for '" + algorithm +
                          "', style " + style.name() + " needs " + std::to_string(np) + " and " +
                          std::to_string(nn));
    }
    std::vector<Example> out(pos.begin(), pos.begin() + static_cast<long>(np));
    out.insert(out.end(), neg.begin(), neg.begin() + static_cast<long>(nn));
    return out;
}

std::string yes_no_prompt(std::string_view method_source, std::string_view algorithm_name) {
    std::string s = "SNIPPET: ";
    s += method_source;
    s += " Does the snippet implement ";
    s += algorithm_name;
    s += ", only answer with 'Yes' or 'No'?";
    return s;
}

std::string score_prompt(std::string_view method_source, std::string_view algorithm_name,
                         bool step_by_step) {
    std::string s = "SNIPPET: ";
    s += method_source;
    s += " Does the code snippet implement the algorithm ";
    s += algorithm_name;
    s += "?\n";
    s += kRubric;
    s += step_by_step ? kStepByStepInstruction : kStrictInstruction;
    return s;
}

std::vector<Message> build_prompt(const PromptStyle& style, const std::string& algorithm,
                                  const code_model::MethodRecord& method,
                                  const ExampleLibrary* library) {
    const std::string_view name = display_name(algorithm);
    std::vector<Message> messages;
    switch (style.variant) {
        case Variant::yes_no:
            messages.push_back({"user", yes_no_prompt(method.source, name)});
            break;
        case Variant::score:
            messages.push_back({"user", score_prompt(method.source, name)});
            break;
        case Variant::cot:
            messages.push_back({"user", score_prompt(method.source, name, true)});
            break;
        case Variant::icl: {
            if (!library) {
                throw ConfigError("style " + style.name() + " needs an example library");
            }
            for (const auto& ex : library->select(style, algorithm)) {
                messages.push_back({"user", score_prompt(ex.source, name)});
                messages.push_back({"assistant", std::to_string(ex.score)});
            }
            messages.push_back({"user", score_prompt(method.source, name)});
            break;
        }
    }
    return messages;
}

std::string style_hash(const PromptStyle& style, const std::string& algorithm,
                       const ExampleLibrary* library) {
    nlohmann::json j = {
        {"variant", variant_name(style.variant)},
        {"name", style.name()},
        {"temperature", style.decoding.temperature},
        {"top_k", style.decoding.top_k},
        {"top_p", style.decoding.top_p},
        {"max_tokens", style.decoding.max_tokens},
        {"template", sha256_hex(score_prompt("", "") + yes_no_prompt("", ""))},
    };
    if (style.variant == Variant::icl && library) {
        nlohmann::json examples = nlohmann::json::array();
        for (const auto& ex : library->select(style, algorithm)) {
            examples.push_back({{"id", ex.id}, {"score", ex.score}, {"source", sha256_hex(ex.source)}});
        }
        j["examples"] = examples;
    }
    return sha256_hex(j.dump());
}

}  // namespace algorec::llm
