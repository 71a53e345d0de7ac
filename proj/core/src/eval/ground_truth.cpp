#include "algorec/eval/ground_truth.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include <nlohmann/json.hpp>

#include "algorec/algorithms.hpp"
#include "algorec/errors.hpp"

namespace algorec::eval {

std::string_view to_string(Label l) { return l == Label::positive ? "positive" : "negative"; }

void GroundTruth::add(TruthEntry entry) {
    auto key = std::make_pair(entry.algorithm, entry.method_id);
    if (!index_.emplace(key, entry.label).second) {
        throw DataError("duplicate truth entry for (" + entry.algorithm + ", " + entry.method_id +
                        ")");
    }
    entries_.push_back(std::move(entry));
}

std::optional<Label> GroundTruth::label(const std::string& algorithm,
                                        const std::string& method_id) const {
    auto it = index_.find({algorithm, method_id});
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::vector<std::string> GroundTruth::algorithms() const {
    std::set<std::string> present;
    for (const auto& e : entries_) {
        present.insert(e.algorithm);
    }
    std::vector<std::string> out;
    for (const auto& a : kAlgorithms) {
        if (present.count(std::string(a.id))) {
            out.emplace_back(a.id);
        }
    }
    return out;
}

std::vector<std::string> GroundTruth::labeled(const std::string& algorithm) const {
    std::vector<std::string> out;
    for (const auto& e : entries_) {
        if (e.algorithm == algorithm) {
            out.push_back(e.method_id);
        }
    }
    return out;
}

std::size_t GroundTruth::count(const std::string& algorithm, Label l) const {
    std::size_t n = 0;
    for (const auto& e : entries_) {
        if (e.algorithm == algorithm && e.label == l) {
            ++n;
        }
    }
    return n;
}

GroundTruth parse_ground_truth(std::istream& in, const code_model::Corpus* corpus,
                               const std::string& where) {
    std::set<std::string> known;
    if (corpus) {
        for (const auto& r : *corpus) {
            known.insert(r.method_id);
        }
    }
    GroundTruth truth;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        const std::string at = where + ":" + std::to_string(line_no) + ": ";
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw DataError(at + "malformed JSON: " + e.what());
        }
        if (!j.is_object() || !j.contains("method_id") || !j.contains("algorithm") ||
            !j.contains("label")) {
            throw DataError(at + "expected {method_id, algorithm, label}");
        }
        TruthEntry e;
        e.method_id = j.at("method_id").get<std::string>();
        const auto algo = resolve_algorithm(j.at("algorithm").get<std::string>());
        if (!algo) {
            throw DataError(at + "unknown algorithm '" + j.at("algorithm").get<std::string>() + "'");
        }
        e.algorithm = *algo;
        const auto& label = j.at("label");
        if (label.is_boolean()) {
            e.label = label.get<bool>() ? Label::positive : Label::negative;
        } else if (label.is_string() && label.get<std::string>() == "positive") {
            e.label = Label::positive;
        } else if (label.is_string() && label.get<std::string>() == "negative") {
            e.label = Label::negative;
        } else {
            throw DataError(at + "label must be \"positive\" or \"negative\"");
        }
        if (corpus && !known.count(e.method_id)) {
            throw DataError(at + "method id '" + e.method_id + "' is not in the corpus");
        }
        try {
            truth.add(std::move(e));
        } catch (const DataError& err) {
            throw DataError(at + err.what());
        }
    }
    return truth;
}

GroundTruth load_ground_truth(const std::filesystem::path& path, const code_model::Corpus* corpus) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot read ground truth " + path.string());
    }
    return parse_ground_truth(in, corpus, path.string());
}

void write_ground_truth(const GroundTruth& truth, std::ostream& out) {
    for (const auto& e : truth.entries()) {
        nlohmann::json j = {{"method_id", e.method_id},
                            {"algorithm", e.algorithm},
                            {"label", std::string(to_string(e.label))}};
        out << j.dump() << '\n';
    }
}

}  // namespace algorec::eval
