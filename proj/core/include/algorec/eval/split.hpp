#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "algorec/code_model/corpus.hpp"
#include "algorec/eval/ground_truth.hpp"

namespace algorec::eval {

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
    std::size_t n = 0;
    std::size_t m = 0;

    bool operator==(const KsResult&) const = default;
};

/// sup_x |F_a(x) - F_b(x)| by a merge sweep over the sorted samples.
double ks_statistic(std::vector<double> a, std::vector<double> b);

/// Kolmogorov survival function Q(lambda) = 2 sum (-1)^(j-1) exp(-2 j^2 lambda^2).
double kolmogorov_q(double lambda);

/// Asymptotic two-sample p-value Q(sqrt(nm / (n + m)) * d).
double ks_p_value(double d, std::size_t n, std::size_t m);

KsResult ks_test(const std::vector<double>& a, const std::vector<double>& b);

enum class SplitPart { test, validation };

std::string_view to_string(SplitPart p);

struct SplitSpec {
    std::uint64_t seed = 0;
    double ratio = 0.7;  ///< test fraction
    std::map<std::string, SplitPart> assignment;
    KsResult ks;
    std::vector<std::string> warnings;

    bool operator==(const SplitSpec& o) const {
        return seed == o.seed && ratio == o.ratio && assignment == o.assignment && ks == o.ks;
    }
};

/// Unbiased draw from [0, n) by rejection; independent of the standard
/// library's distribution implementations.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);

template <class T>
void seeded_shuffle(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(uniform_below(rng, i));
        std::swap(v[i - 1], v[j]);
    }
}

/// Stratified split. Each method falls in the stratum of its first positive
/// label, else its first negative label, else the unlabeled stratum; each
/// stratum sends round(ratio * size) methods to the test part. Throws
/// ConfigError for a ratio outside (0,1) and DataError when a labeled
/// algorithm has fewer than two positives.
SplitSpec make_split(const code_model::Corpus& corpus, const GroundTruth& truth, double ratio,
                     std::uint64_t seed);

/// KS over ast_element_count of the two parts.
KsResult split_ks(const code_model::Corpus& corpus, const SplitSpec& split);

nlohmann::json split_to_json(const SplitSpec& split);
SplitSpec split_from_json(const nlohmann::json& j);
void save_split(const SplitSpec& split, const std::filesystem::path& path);
SplitSpec load_split(const std::filesystem::path& path);

struct ReducedDataset {
    code_model::Corpus corpus;
    GroundTruth truth;
    std::optional<KsResult> ks;  ///< present when a split was supplied
    std::map<std::string, std::size_t> kept_negatives;
    std::map<std::string, std::size_t> dropped_negatives;
};

/// Keeps llround(keep_fraction * n) of the negatives of each thinned
/// algorithm (per split part when a split is given). Positives are always
/// kept. Methods that lose their last label leave the corpus.
ReducedDataset reduced_dataset(const code_model::Corpus& corpus, const GroundTruth& truth,
                               double keep_fraction,
                               const std::vector<std::string>& algorithms_to_thin,
                               std::uint64_t seed, const SplitSpec* split = nullptr);

inline const std::vector<std::string> kDefaultThinned{"bubble_sort", "binary_search"};

}  // namespace algorec::eval
