#include "algorec/eval/pipeline.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "algorec/algorithms.hpp"
#include "algorec/errors.hpp"
#include "algorec/structural/embed.hpp"

namespace algorec::eval {

std::string_view to_string(FilterKind k) {
    switch (k) {
        case FilterKind::none: return "none";
        case FilterKind::keyword: return "keyword";
        case FilterKind::structural: return "structural";
    }
    return "?";
}

std::string_view to_string(Mode m) { return m == Mode::standard ? "standard" : "lower-bound"; }

FilterKind parse_filter_kind(std::string_view s) {
    if (s == "none") {
        return FilterKind::none;
    }
    if (s == "keyword") {
        return FilterKind::keyword;
    }
    if (s == "structural") {
        return FilterKind::structural;
    }
    throw ConfigError("unknown filter '" + std::string(s) + "' (expected none, keyword or structural)");
}

Mode parse_mode(std::string_view s) {
    if (s == "standard") {
        return Mode::standard;
    }
    if (s == "lower-bound" || s == "lower_bound") {
        return Mode::lower_bound;
    }
    throw ConfigError("unknown mode '" + std::string(s) + "' (expected standard or lower-bound)");
}

std::string FilterSpec::name() const {
    switch (kind) {
        case FilterKind::none:
            return "none";
        case FilterKind::keyword:
            return keyword.empty() ? "keyword"
                                   : "keyword:" + std::string(keyword::to_string(
                                                      keyword.begin()->second.family));
        case FilterKind::structural:
            return structural.empty() ? "structural"
                                      : "structural:" + structural.begin()->second.family;
    }
    return "?";
}

bool FilterSpec::covers(const std::string& algorithm) const {
    switch (kind) {
        case FilterKind::none: return true;
        case FilterKind::keyword: return keyword.count(algorithm) > 0;
        case FilterKind::structural: return structural.count(algorithm) > 0;
    }
    return false;
}

FilterSpec load_filter(FilterKind kind, const std::filesystem::path& path) {
    FilterSpec f;
    f.kind = kind;
    if (kind == FilterKind::keyword) {
        for (auto& p : keyword::load_patterns(path)) {
            const std::string algo = p.algorithm;
            if (!f.keyword.emplace(algo, std::move(p)).second) {
                throw ConfigError("two keyword patterns for '" + algo + "' under " + path.string());
            }
        }
    } else if (kind == FilterKind::structural) {
        for (auto& p : structural::load_patterns(path)) {
            const std::string algo = p.algorithm;
            if (!f.structural.emplace(algo, std::move(p)).second) {
                throw ConfigError("two structural patterns for '" + algo + "' under " +
                                  path.string() + "; pick one file");
            }
        }
    }
    return f;
}

RunResults run_pipeline(const code_model::Corpus& corpus, const GroundTruth& truth,
                        const FilterSpec& filter, const llm::PromptStyle& style,
                        llm::Backend& backend, const llm::ExampleLibrary* library,
                        const PipelineOptions& options) {
    if (options.part && !options.split) {
        throw ConfigError("a split part was requested without a split");
    }
    std::vector<std::string> algorithms = options.algorithms;
    if (algorithms.empty()) {
        algorithms = truth.algorithms();
    }
    for (auto& a : algorithms) {
        const auto id = resolve_algorithm(a);
        if (!id) {
            throw ConfigError("unknown algorithm '" + a + "'");
        }
        a = *id;
        if (!filter.covers(a)) {
            throw ConfigError("filter " + filter.name() + " has no pattern for '" + a + "'");
        }
    }

    auto in_part = [&](const std::string& id) {
        if (!options.part) {
            return true;
        }
        auto it = options.split->assignment.find(id);
        return it != options.split->assignment.end() && it->second == *options.part;
    };

    std::map<std::string, std::size_t> position;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        position.emplace(corpus[i].method_id, i);
    }

    RunResults results;
    results.filter = filter.name();
    results.style = style.name();
    results.backend = backend.id();
    results.mode = options.mode;

    for (const auto& algo : algorithms) {
        code_model::Corpus scope;
        if (options.mode == Mode::standard) {
            for (const auto& id : truth.labeled(algo)) {
                auto it = position.find(id);
                if (it == position.end()) {
                    throw DataError("truth method '" + id + "' is not in the corpus");
                }
                if (in_part(id)) {
                    scope.push_back(corpus[it->second]);
                }
            }
        } else {
            for (const auto& r : corpus) {
                if (in_part(r.method_id)) {
                    scope.push_back(r);
                }
            }
        }

        std::vector<bool> passed(scope.size(), true);
        std::vector<std::string> reasons(scope.size());
        if (filter.kind == FilterKind::keyword) {
            const auto fr = keyword::filter_corpus(filter.keyword.at(algo), scope);
            for (std::size_t i = 0; i < scope.size(); ++i) {
                passed[i] = fr.decisions[i].passed;
                reasons[i] = passed[i] ? "match" : "";
            }
        } else if (filter.kind == FilterKind::structural) {
            const auto fr = structural::filter_corpus(filter.structural.at(algo), scope);
            for (std::size_t i = 0; i < scope.size(); ++i) {
                passed[i] = fr.decisions[i].passed;
                reasons[i] = fr.decisions[i].pass_reason;
            }
        }

        code_model::Corpus survivors;
        for (std::size_t i = 0; i < scope.size(); ++i) {
            if (passed[i]) {
                survivors.push_back(scope[i]);
            }
        }
        const auto batch = llm::run_batch(style, algo, survivors, backend, library, options.batch);

        std::size_t next = 0;
        for (std::size_t i = 0; i < scope.size(); ++i) {
            ResultRow row;
            row.algorithm = algo;
            row.method_id = scope[i].method_id;
            row.label = truth.label(algo, row.method_id);
            row.excluded = !passed[i];
            row.pass_reason = reasons[i];
            if (passed[i]) {
                const auto& entry = batch.entries[next++];
                if (entry.verdict) {
                    row.raw_score = entry.verdict->raw_score;
                }
                row.error_kind = entry.error_kind;
                row.cache_hit = entry.cache_hit;
            }
            results.rows.push_back(std::move(row));
        }
    }
    return results;
}

void relabel(RunResults& results, const GroundTruth& truth) {
    for (auto& row : results.rows) {
        row.label = truth.label(row.algorithm, row.method_id);
    }
}

void write_results(const RunResults& results, std::ostream& out) {
    for (const auto& r : results.rows) {
        nlohmann::json j = {{"filter", results.filter},
                            {"style", results.style},
                            {"backend", results.backend},
                            {"mode", std::string(to_string(results.mode))},
                            {"algorithm", r.algorithm},
                            {"method_id", r.method_id},
                            {"label", r.label ? nlohmann::json(std::string(to_string(*r.label)))
                                              : nlohmann::json(nullptr)},
                            {"excluded", r.excluded},
                            {"raw_score", r.raw_score ? nlohmann::json(*r.raw_score)
                                                      : nlohmann::json(nullptr)}};
        if (!r.pass_reason.empty()) {
            j["pass_reason"] = r.pass_reason;
        }
        if (!r.error_kind.empty()) {
            j["error_kind"] = r.error_kind;
        }
        if (r.cache_hit) {
            j["cache_hit"] = true;
        }
        out << j.dump() << '\n';
    }
}

void save_results(const RunResults& results, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    write_results(results, out);
    if (!out) {
        throw DataError("cannot write results file " + path.string());
    }
}

std::vector<RunResults> read_results(std::istream& in, const std::string& where) {
    std::vector<RunResults> runs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        const std::string at = where + ":" + std::to_string(line_no) + ": ";
        try {
            const auto j = nlohmann::json::parse(line);
            RunResults key;
            key.filter = j.at("filter").get<std::string>();
            key.style = j.at("style").get<std::string>();
            key.backend = j.at("backend").get<std::string>();
            key.mode = parse_mode(j.at("mode").get<std::string>());
            RunResults* run = nullptr;
            for (auto& r : runs) {
                if (r.filter == key.filter && r.style == key.style && r.backend == key.backend &&
                    r.mode == key.mode) {
                    run = &r;
                }
            }
            if (!run) {
                runs.push_back(std::move(key));
                run = &runs.back();
            }
            ResultRow row;
            row.algorithm = j.at("algorithm").get<std::string>();
            row.method_id = j.at("method_id").get<std::string>();
            if (!j.at("label").is_null()) {
                const auto l = j.at("label").get<std::string>();
                if (l != "positive" && l != "negative") {
                    throw DataError(at + "bad label '" + l + "'");
                }
                row.label = l == "positive" ? Label::positive : Label::negative;
            }
            row.excluded = j.at("excluded").get<bool>();
            if (!j.at("raw_score").is_null()) {
                row.raw_score = j.at("raw_score").get<int>();
                if (*row.raw_score < 0 || *row.raw_score > llm::kMaxScore) {
                    throw DataError(at + "raw_score outside 0-4");
                }
            }
            row.pass_reason = j.value("pass_reason", std::string());
            row.error_kind = j.value("error_kind", std::string());
            row.cache_hit = j.value("cache_hit", false);
            run->rows.push_back(std::move(row));
        } catch (const nlohmann::json::exception& e) {
            throw DataError(at + "malformed results row: " + e.what());
        } catch (const ConfigError& e) {
            throw DataError(at + e.what());
        }
    }
    return runs;
}

std::vector<RunResults> load_results(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot read results file " + path.string());
    }
    return read_results(in, path.string());
}

}  // namespace algorec::eval
