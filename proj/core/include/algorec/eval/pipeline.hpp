#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "algorec/code_model/corpus.hpp"
#include "algorec/eval/ground_truth.hpp"
#include "algorec/eval/split.hpp"
#include "algorec/keyword/keyword_filter.hpp"
#include "algorec/llm/backend.hpp"
#include "algorec/llm/classify.hpp"
#include "algorec/llm/prompt.hpp"
#include "algorec/structural/pattern.hpp"

namespace algorec::eval {

enum class FilterKind { none, keyword, structural };
enum class Mode { standard, lower_bound };

std::string_view to_string(FilterKind k);
std::string_view to_string(Mode m);
FilterKind parse_filter_kind(std::string_view s);
Mode parse_mode(std::string_view s);

/// One pattern per algorithm, or none at all.
struct FilterSpec {
    FilterKind kind = FilterKind::none;
    std::map<std::string, keyword::KeywordPattern> keyword;
    std::map<std::string, structural::StructuralPattern> structural;

    /// "none", "keyword:<family>" or "structural:<family>".
    std::string name() const;
    bool covers(const std::string& algorithm) const;
};

/// Loads every pattern under `path` (file or directory). Throws
/// ConfigError when two patterns target the same algorithm.
FilterSpec load_filter(FilterKind kind, const std::filesystem::path& path);

struct ResultRow {
    std::string algorithm;
    std::string method_id;
    std::optional<Label> label;  ///< empty for methods the truth does not know
    bool excluded = false;       ///< removed by the filter, predicted negative
    std::string pass_reason;
    std::optional<int> raw_score;  ///< empty when excluded or errored
    std::string error_kind;
    bool cache_hit = false;

    bool operator==(const ResultRow&) const = default;
};

struct RunResults {
    std::string filter = "none";
    std::string style;
    std::string backend;
    Mode mode = Mode::standard;
    std::vector<ResultRow> rows;

    bool operator==(const RunResults&) const = default;
};

struct PipelineOptions {
    Mode mode = Mode::standard;
    /// Restricts the run to one part of `split`.
    const SplitSpec* split = nullptr;
    std::optional<SplitPart> part;
    /// Empty means every algorithm in the truth.
    std::vector<std::string> algorithms;
    llm::BatchOptions batch;
};

/// Filters then classifies. Standard mode scores the labeled methods of each
/// algorithm; lower-bound mode scores every corpus method for every
/// algorithm. Backend failures are recorded per row and never abort the run.
RunResults run_pipeline(const code_model::Corpus& corpus, const GroundTruth& truth,
                        const FilterSpec& filter, const llm::PromptStyle& style,
                        llm::Backend& backend, const llm::ExampleLibrary* library,
                        const PipelineOptions& options);

/// Re-derives each row's label from `truth`.
void relabel(RunResults& results, const GroundTruth& truth);

/// Results JSONL, one row per (algorithm, method) with the run fields repeated.
void write_results(const RunResults& results, std::ostream& out);
void save_results(const RunResults& results, const std::filesystem::path& path);
/// A file may hold several runs; they come back in first-appearance order.
std::vector<RunResults> read_results(std::istream& in, const std::string& where = "results");
std::vector<RunResults> load_results(const std::filesystem::path& path);

}  // namespace algorec::eval
