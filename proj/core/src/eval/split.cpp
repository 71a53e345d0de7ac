#include "algorec/eval/split.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

#include "algorec/algorithms.hpp"
#include "algorec/errors.hpp"

namespace algorec::eval {

namespace {

constexpr std::string_view kUnlabeled = "unlabeled";

std::vector<double> element_counts(const code_model::Corpus& corpus, const SplitSpec& split,
                                   SplitPart part) {
    std::vector<double> out;
    for (const auto& r : corpus) {
        auto it = split.assignment.find(r.method_id);
        if (it != split.assignment.end() && it->second == part) {
            out.push_back(static_cast<double>(r.ast_element_count));
        }
    }
    return out;
}

}  // namespace

std::string_view to_string(SplitPart p) { return p == SplitPart::test ? "test" : "validation"; }

double ks_statistic(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) {
        return 0.0;
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == x) {
            ++i;
        }
        while (j < b.size() && b[j] == x) {
            ++j;
        }
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double kolmogorov_q(double lambda) {
    if (lambda <= 0.0) {
        return 1.0;
    }
    if (lambda < 1.18) {
        // Jacobi-transformed series, fast for small lambda.
        const double pi = std::numbers::pi;
        const double k = -pi * pi / (8.0 * lambda * lambda);
        double sum = 0.0;
        for (int j = 1; j <= 50; ++j) {
            const double odd = 2.0 * j - 1.0;
            const double term = std::exp(k * odd * odd);
            sum += term;
            if (term < 1e-18) {
                break;
            }
        }
        return std::clamp(1.0 - std::sqrt(2.0 * pi) / lambda * sum, 0.0, 1.0);
    }
    double sum = 0.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        sum += (j % 2 == 1) ? term : -term;
        if (term < 1e-18) {
            break;
        }
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

double ks_p_value(double d, std::size_t n, std::size_t m) {
    if (n == 0 || m == 0) {
        return 1.0;
    }
    const double en = static_cast<double>(n) * static_cast<double>(m) /
                      static_cast<double>(n + m);
    return kolmogorov_q(std::sqrt(en) * d);
}

KsResult ks_test(const std::vector<double>& a, const std::vector<double>& b) {
    KsResult r;
    r.n = a.size();
    r.m = b.size();
    r.statistic = ks_statistic(a, b);
    r.p_value = ks_p_value(r.statistic, r.n, r.m);
    return r;
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    if (n <= 1) {
        return 0;
    }
    const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % n;
    for (;;) {
        const std::uint64_t v = rng();
        if (v < limit) {
            return v % n;
        }
    }
}

SplitSpec make_split(const code_model::Corpus& corpus, const GroundTruth& truth, double ratio,
                     std::uint64_t seed) {
    if (!(ratio > 0.0 && ratio < 1.0)) {
        throw ConfigError("split ratio must lie in (0, 1)");
    }
    for (const auto& algo : truth.algorithms()) {
        if (truth.count(algo, Label::positive) < 2) {
            throw DataError("algorithm '" + algo + "' has fewer than 2 positives; cannot stratify");
        }
    }

    // Stratum per method: first positive label, else first negative label.
    std::map<std::string, std::string> stratum_of;
    for (const auto& e : truth.entries()) {
        if (e.label == Label::positive && !stratum_of.count(e.method_id)) {
            stratum_of[e.method_id] = e.algorithm + "/positive";
        }
    }
    for (const auto& e : truth.entries()) {
        if (!stratum_of.count(e.method_id)) {
            stratum_of[e.method_id] = e.algorithm + "/negative";
        }
    }
    std::vector<std::string> order;
    for (const auto& a : kAlgorithms) {
        order.push_back(std::string(a.id) + "/positive");
        order.push_back(std::string(a.id) + "/negative");
    }
    order.emplace_back(kUnlabeled);
    std::map<std::string, std::vector<std::string>> strata;
    for (const auto& r : corpus) {
        auto it = stratum_of.find(r.method_id);
        strata[it == stratum_of.end() ? std::string(kUnlabeled) : it->second].push_back(r.method_id);
    }

    SplitSpec split;
    split.seed = seed;
    split.ratio = ratio;
    std::mt19937_64 rng(seed);
    for (const auto& key : order) {
        auto it = strata.find(key);
        if (it == strata.end()) {
            continue;
        }
        auto ids = it->second;
        seeded_shuffle(ids, rng);
        const auto n_test = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(ids.size())));
        for (std::size_t i = 0; i < ids.size(); ++i) {
            split.assignment[ids[i]] = i < n_test ? SplitPart::test : SplitPart::validation;
        }
    }
    split.ks = split_ks(corpus, split);
    if (split.ks.p_value < 0.05) {
        split.warnings.push_back("KS test rejects equal AST-size distributions (p = " +
                                 std::to_string(split.ks.p_value) + ")");
    }
    return split;
}

KsResult split_ks(const code_model::Corpus& corpus, const SplitSpec& split) {
    return ks_test(element_counts(corpus, split, SplitPart::test),
                   element_counts(corpus, split, SplitPart::validation));
}

nlohmann::json split_to_json(const SplitSpec& split) {
    nlohmann::json assignment = nlohmann::json::object();
    for (const auto& [id, part] : split.assignment) {
        assignment[id] = std::string(to_string(part));
    }
    return {{"seed", split.seed},
            {"ratio", split.ratio},
            {"assignment", assignment},
            {"ks",
             {{"statistic", split.ks.statistic},
              {"p_value", split.ks.p_value},
              {"n_test", split.ks.n},
              {"n_validation", split.ks.m}}}};
}

SplitSpec split_from_json(const nlohmann::json& j) {
    SplitSpec s;
    try {
        s.seed = j.at("seed").get<std::uint64_t>();
        s.ratio = j.at("ratio").get<double>();
        for (const auto& [id, part] : j.at("assignment").items()) {
            const auto p = part.get<std::string>();
            if (p != "test" && p != "validation") {
                throw DataError("split assignment for '" + id + "' must be test or validation");
            }
            s.assignment[id] = p == "test" ? SplitPart::test : SplitPart::validation;
        }
        const auto& ks = j.at("ks");
        s.ks.statistic = ks.at("statistic").get<double>();
        s.ks.p_value = ks.at("p_value").get<double>();
        s.ks.n = ks.value("n_test", std::size_t{0});
        s.ks.m = ks.value("n_validation", std::size_t{0});
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed split file: ") + e.what());
    }
    return s;
}

void save_split(const SplitSpec& split, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    out << split_to_json(split).dump(2) << '\n';
    if (!out) {
        throw DataError("cannot write split file " + path.string());
    }
}

SplitSpec load_split(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot read split file " + path.string());
    }
    try {
        return split_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::parse_error& e) {
        throw DataError(path.string() + ": malformed JSON: " + e.what());
    }
}

ReducedDataset reduced_dataset(const code_model::Corpus& corpus, const GroundTruth& truth,
                               double keep_fraction,
                               const std::vector<std::string>& algorithms_to_thin,
                               std::uint64_t seed, const SplitSpec* split) {
    if (!(keep_fraction > 0.0 && keep_fraction <= 1.0)) {
        throw ConfigError("keep fraction must lie in (0, 1]");
    }
    std::set<std::string> thin;
    for (const auto& name : algorithms_to_thin) {
        const auto id = resolve_algorithm(name);
        if (!id) {
            throw ConfigError("unknown algorithm '" + name + "'");
        }
        thin.insert(*id);
    }

    ReducedDataset out;
    std::set<std::pair<std::string, std::string>> dropped;
    std::mt19937_64 rng(seed);
    for (const auto& a : kAlgorithms) {
        const std::string algo(a.id);
        if (!thin.count(algo)) {
            continue;
        }
        // One stratum per split part; everything in one stratum without a split.
        std::map<int, std::vector<std::string>> strata;
        for (const auto& e : truth.entries()) {
            if (e.algorithm != algo || e.label != Label::negative) {
                continue;
            }
            int part = 0;
            if (split) {
                auto it = split->assignment.find(e.method_id);
                part = it == split->assignment.end() ? 2 : static_cast<int>(it->second);
            }
            strata[part].push_back(e.method_id);
        }
        for (auto& [part, ids] : strata) {
            const auto keep = static_cast<std::size_t>(
                std::llround(keep_fraction * static_cast<double>(ids.size())));
            auto shuffled = ids;
            seeded_shuffle(shuffled, rng);
            for (std::size_t i = keep; i < shuffled.size(); ++i) {
                dropped.insert({algo, shuffled[i]});
            }
            out.kept_negatives[algo] += keep;
            out.dropped_negatives[algo] += shuffled.size() - keep;
        }
    }

    std::set<std::string> labeled_before;
    std::set<std::string> labeled_after;
    for (const auto& e : truth.entries()) {
        labeled_before.insert(e.method_id);
        if (!dropped.count({e.algorithm, e.method_id})) {
            labeled_after.insert(e.method_id);
            out.truth.add(e);
        }
    }
    for (const auto& r : corpus) {
        if (labeled_before.count(r.method_id) && !labeled_after.count(r.method_id)) {
            continue;
        }
        out.corpus.push_back(r);
    }
    if (split) {
        out.ks = split_ks(out.corpus, *split);
    }
    return out;
}

}  // namespace algorec::eval
