#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "algorec/code_model/corpus.hpp"

namespace algorec::eval {

enum class Label { positive, negative };

std::string_view to_string(Label l);

struct TruthEntry {
    std::string method_id;
    std::string algorithm;  ///< canonical id
    Label label = Label::negative;
};

/// Labels per (algorithm, method id). Entries keep file order.
class GroundTruth {
public:
    /// Throws DataError on a duplicate (algorithm, method_id).
    void add(TruthEntry entry);

    const std::vector<TruthEntry>& entries() const { return entries_; }
    std::optional<Label> label(const std::string& algorithm, const std::string& method_id) const;

    /// Algorithms that have at least one entry, in report order.
    std::vector<std::string> algorithms() const;

    /// Labeled ids for one algorithm, in file order.
    std::vector<std::string> labeled(const std::string& algorithm) const;

    std::size_t count(const std::string& algorithm, Label l) const;

    bool empty() const { return entries_.empty(); }

private:
    std::vector<TruthEntry> entries_;
    std::map<std::pair<std::string, std::string>, Label> index_;
};

/// Reads JSONL rows {method_id, algorithm, label}. Algorithm names may be
/// ids or display names; labels are "positive"/"negative" (or true/false).
/// When `corpus` is given every method id must exist in it.
GroundTruth parse_ground_truth(std::istream& in, const code_model::Corpus* corpus = nullptr,
                               const std::string& where = "truth");
GroundTruth load_ground_truth(const std::filesystem::path& path,
                              const code_model::Corpus* corpus = nullptr);

void write_ground_truth(const GroundTruth& truth, std::ostream& out);

}  // namespace algorec::eval
