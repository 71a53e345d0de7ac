#include "algorec/code_model/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "algorec/code_model/extractor.hpp"
#include "algorec/errors.hpp"

namespace algorec::code_model {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot read " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void add_file(const fs::path& file, const std::string& rel, CorpusLoadResult& out) {
    try {
        ExtractResult ex = extract_methods(read_file(file), rel);
        out.skipped_regions += ex.skipped_regions;
        for (auto& w : ex.warnings) {
            out.diagnostics.push_back(std::move(w));
        }
        for (auto& r : ex.records) {
            out.records.push_back(std::move(r));
        }
    } catch (const EncodingError& e) {
        ++out.rejected_records;
        out.diagnostics.push_back(rel + ": " + e.what());
    }
}

void load_jsonl(const fs::path& path, CorpusLoadResult& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot read " + path.string());
    }
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": malformed JSON: " + e.what());
        }
        try {
            out.records.push_back(record_from_json(j));
        } catch (const EncodingError& e) {
            ++out.rejected_records;
            out.diagnostics.push_back(path.string() + ":" + std::to_string(line_no) + ": " +
                                      e.what());
        }
    }
}

}  // namespace

CorpusLoadResult load_corpus(const fs::path& path) {
    CorpusLoadResult out;
    std::error_code ec;
    if (!fs::exists(path, ec)) {
        throw DataError("corpus path does not exist: " + path.string());
    }
    if (fs::is_directory(path)) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::recursive_directory_iterator(path)) {
            if (entry.is_regular_file() && entry.path().extension() == ".java") {
                files.push_back(entry.path());
            }
        }
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
            add_file(f, fs::relative(f, path).generic_string(), out);
        }
    } else if (path.extension() == ".java") {
        add_file(path, path.filename().generic_string(), out);
    } else {
        load_jsonl(path, out);
    }
    std::unordered_set<std::string> seen;
    for (const auto& r : out.records) {
        if (!seen.insert(r.method_id).second) {
            throw DataError("duplicate method_id in corpus: " + r.method_id);
        }
    }
    return out;
}

nlohmann::json record_to_json(const MethodRecord& record) {
    nlohmann::json j = {
        {"method_id", record.method_id},
        {"file_path", record.file_path},
        {"name", record.name},
        {"source", record.source},
        {"ast_element_count", record.ast_element_count},
    };
    if (record.obfuscated) {
        j["obfuscated"] = true;
    }
    if (record.seed) {
        j["seed"] = *record.seed;
    }
    return j;
}

MethodRecord record_from_json(const nlohmann::json& j) {
    if (!j.is_object()) {
        throw DataError("corpus record is not a JSON object");
    }
    for (const char* key : {"method_id", "file_path", "name", "source"}) {
        if (!j.contains(key) || !j.at(key).is_string()) {
            throw DataError(std::string("corpus record missing string field '") + key + "'");
        }
    }
    MethodRecord r = make_record(j.at("method_id").get<std::string>(),
                                 j.at("file_path").get<std::string>(),
                                 j.at("name").get<std::string>(), j.at("source").get<std::string>());
    r.obfuscated = j.value("obfuscated", false);
    if (j.contains("seed") && j.at("seed").is_number_unsigned()) {
        r.seed = j.at("seed").get<std::uint64_t>();
    }
    return r;
}

void write_corpus_jsonl(const Corpus& corpus, std::ostream& out) {
    for (const auto& r : corpus) {
        out << record_to_json(r).dump() << '\n';
    }
}

}  // namespace algorec::code_model
