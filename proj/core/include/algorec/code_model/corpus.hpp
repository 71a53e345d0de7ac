#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "algorec/code_model/method_record.hpp"

namespace algorec::code_model {

using Corpus = std::vector<MethodRecord>;

struct CorpusLoadResult {
    Corpus records;
    std::size_t skipped_regions = 0;
    std::size_t rejected_records = 0;  ///< invalid encoding
    std::vector<std::string> diagnostics;
};

/// Loads a corpus from a directory tree of .java files (files visited in
/// sorted path order, paths made relative to the root) or from a JSONL file
/// of {method_id, file_path, name, source}. Throws DataError on missing paths,
/// malformed JSON and duplicate method ids.
CorpusLoadResult load_corpus(const std::filesystem::path& path);

nlohmann::json record_to_json(const MethodRecord& record);
MethodRecord record_from_json(const nlohmann::json& j);

void write_corpus_jsonl(const Corpus& corpus, std::ostream& out);

}  // namespace algorec::code_model
