#include "commands.hpp"

#include <fstream>
#include <iostream>
#include <set>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "algorec/algorithms.hpp"
#include "algorec/code_model/corpus.hpp"
#include "algorec/errors.hpp"
#include "algorec/eval/ground_truth.hpp"
#include "algorec/eval/metrics.hpp"
#include "algorec/eval/pipeline.hpp"
#include "algorec/eval/report.hpp"
#include "algorec/eval/split.hpp"
#include "algorec/keyword/keyword_filter.hpp"
#include "algorec/llm/backend.hpp"
#include "algorec/llm/classify.hpp"
#include "algorec/obfuscate/obfuscator.hpp"
#include "algorec/structural/embed.hpp"
#include "run_context.hpp"

namespace algorec::cli {

namespace {

using code_model::Corpus;

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write " + path.string());
    }
    return out;
}

Corpus load_corpus_logged(const std::string& path, bool quiet) {
    auto loaded = code_model::load_corpus(path);
    if (!quiet) {
        std::cerr << fmt::format("loaded {} methods from {}", loaded.records.size(), path);
        if (loaded.rejected_records > 0) {
            std::cerr << fmt::format(", {} rejected (invalid encoding)", loaded.rejected_records);
        }
        if (loaded.skipped_regions > 0) {
            std::cerr << fmt::format(", {} unparseable regions skipped", loaded.skipped_regions);
        }
        std::cerr << '\n';
    }
    return std::move(loaded.records);
}

std::vector<std::string> resolve_algorithms(const std::vector<std::string>& names) {
    std::vector<std::string> out;
    for (const auto& n : names) {
        const auto id = resolve_algorithm(n);
        if (!id) {
            throw ConfigError("unknown algorithm '" + n + "'");
        }
        out.push_back(*id);
    }
    return out;
}

fs::path default_patterns(const fs::path& data_dir, eval::FilterKind kind, std::string family) {
    if (kind == eval::FilterKind::keyword) {
        if (family.empty()) {
            family = "recall_focused";
        }
        return data_dir / "patterns" / "keyword" / family;
    }
    if (family.empty()) {
        family = "prominent_feature";
    }
    return data_dir / "patterns" / "structural" / family;
}

std::optional<llm::ExampleLibrary> maybe_library(const llm::PromptStyle& style,
                                                 const std::string& flag,
                                                 const fs::path& data_dir, RunContext& ctx) {
    if (style.variant != llm::Variant::icl && flag.empty()) {
        return std::nullopt;
    }
    const fs::path path = flag.empty() ? data_dir / "icl" / "examples.json" : fs::path(flag);
    ctx.input("examples", path);
    return llm::ExampleLibrary::load(path);
}

void print_report(const eval::MetricsReport& r, bool per_algorithm) {
    std::cout << fmt::format("filter={} style={} backend={} mode={}\n", r.filter, r.style,
                             r.backend, eval::to_string(r.mode));
    if (r.thresholds.empty() || r.thresholds.front().per_algorithm.empty()) {
        std::cout << "  no results\n";
        return;
    }
    const auto& best = r.at(r.best_threshold);
    std::cout << fmt::format("  {:<18} {:>4} {:>4} {:>4} {:>5} {:>9} {:>7} {:>7} {:>4}\n",
                             "algorithm", "TP", "FP", "FN", "TN", "precision", "recall", "f1",
                             "ST");
    for (const auto& m : best.per_algorithm) {
        int st = r.best_threshold;
        const eval::AlgorithmMetrics* shown = &m;
        if (per_algorithm) {
            st = r.best_threshold_per_algorithm.at(m.algorithm);
            for (const auto& x : r.at(st).per_algorithm) {
                if (x.algorithm == m.algorithm) {
                    shown = &x;
                }
            }
        }
        const auto& c = shown->confusion;
        std::cout << fmt::format("  {:<18} {:>4} {:>4} {:>4} {:>5} {:>9.4f} {:>7.4f} {:>7.4f} {:>4}\n",
                                 m.algorithm, c.tp, c.fp, c.fn, c.tn, shown->precision,
                                 shown->recall, shown->f1, st);
    }
    std::cout << fmt::format("  best ST {} macro-F1 {:.4f}; reduction micro {:.4f} macro {:.4f}\n",
                             r.best_threshold, best.macro_f1, r.reduction_micro,
                             r.reduction_macro);
    std::size_t errors = 0;
    for (const auto& [algo, n] : r.errored) {
        errors += n;
    }
    if (errors > 0) {
        std::cout << fmt::format("  {} rows errored and count as predicted negative\n", errors);
    }
}

/// Exit code for a run: backend failure (3) when nothing was classified.
int run_status(const std::vector<eval::RunResults>& runs) {
    std::size_t scored = 0;
    std::size_t errored = 0;
    for (const auto& run : runs) {
        for (const auto& row : run.rows) {
            scored += row.raw_score ? 1 : 0;
            errored += row.error_kind.empty() ? 0 : 1;
        }
    }
    if (errored > 0 && scored == 0) {
        std::cerr << fmt::format("error: all {} backend requests failed\n", errored);
        return 3;
    }
    return 0;
}

}  // namespace

const std::vector<std::string>& Commands::names() {
    static const std::vector<std::string> kNames{
        "extract",  "filter", "keyword", "keywords", "structural", "classify",
        "obfuscate", "split", "evaluate", "report",  "sweep"};
    return kNames;
}

void Commands::setup(CLI::App& app) {
    app_ = &app;
    app.require_subcommand(1);
    app.add_option("--data-dir", data_dir_,
                   "Directory with bundled patterns, fixtures and examples");
    app.add_flag("-q,--quiet", quiet_, "Suppress progress messages");
    app.set_version_flag("--version", ALGOREC_VERSION);
    app.footer("Options may also come from a JSON file given with --config; flags win.");

    const std::vector<std::string> kStyles{"score",    "yesno",    "cot",      "icl:0p2n",
                                           "icl:2p0n", "icl:2p2n", "icl:4p4n"};
    auto style_check = CLI::Validator(
        [](std::string& s) -> std::string {
            try {
                llm::parse_style(s);
            } catch (const ConfigError& e) {
                return e.what();
            }
            return {};
        },
        "STYLE");

    auto add_backend = [&](CLI::App* sub) {
        sub->add_option("--backend", backend_, "mock or http (http reads ALGOREC_API_* variables)")
            ->capture_default_str();
        sub->add_option("--examples", examples_, "In-context example library (JSON)");
        sub->add_option("--parallelism,-j", parallelism_, "Concurrent backend requests")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
        sub->add_option("--cache", cache_, "Verdict cache directory");
        sub->add_option("--max-retries", max_retries_, "Retries on transport errors")
            ->capture_default_str()
            ->check(CLI::NonNegativeNumber);
        sub->add_flag("--lenient", lenient_, "Score 0 when a reasoning answer has no digit");
    };

    extract_ = app.add_subcommand("extract", "Extract methods from Java sources into JSONL");
    extract_->add_option("--input,--corpus", input_, "Directory, .java file or JSONL")->required();
    extract_->add_option("--out", out_, "Output JSONL")->required();

    filter_ = app.add_subcommand("filter", "Run a keyword or structural filter over a corpus");
    filter_->require_subcommand(1);
    filter_keyword_ = filter_->add_subcommand("keywords", "Keyword-group regex filter");
    filter_keyword_->alias("keyword");
    filter_structural_ = filter_->add_subcommand("structural", "Structural AST pattern filter");
    for (CLI::App* sub : {filter_keyword_, filter_structural_}) {
        sub->add_option("--corpus", corpus_, "Corpus directory, .java file or JSONL")->required();
        sub->add_option("--patterns,--pattern", patterns_, "Pattern file or directory");
        sub->add_option("--family", family_, "Bundled pattern family when --patterns is absent");
        sub->add_option("--algorithm", algorithms_, "Restrict to these algorithms")->delimiter(',');
        sub->add_option("--out", out_, "Output JSONL")->required();
    }

    classify_ = app.add_subcommand("classify", "Ask an LLM backend to score methods");
    classify_->add_option("--corpus", corpus_, "Corpus directory, .java file or JSONL")->required();
    classify_->add_option("--algorithm", algorithms_, "Algorithm(s) to ask about")
        ->required()
        ->delimiter(',');
    classify_->add_option("--style", style_, "Prompt style: " + CLI::detail::join(kStyles))
        ->capture_default_str()
        ->check(style_check);
    add_backend(classify_);
    classify_->add_option("--out", out_, "Output JSONL of verdicts")->required();

    obfuscate_ = app.add_subcommand("obfuscate", "Rename declared identifiers to random names");
    obfuscate_->add_option("--corpus", corpus_, "Corpus directory, .java file or JSONL")->required();
    obfuscate_->add_option("--seed", seed_, "Random seed")->capture_default_str();
    obfuscate_->add_flag("--strip-comments", strip_comments_, "Remove comments as well");
    obfuscate_->add_option("--out", out_, "Output JSONL")->required();

    split_ = app.add_subcommand("split", "Stratified test/validation split with a KS check");
    split_->add_option("--corpus", corpus_, "Corpus directory, .java file or JSONL")->required();
    split_->add_option("--truth", truth_, "Ground truth JSONL")->required();
    split_->add_option("--ratio", ratio_, "Test fraction")->capture_default_str();
    split_->add_option("--seed", seed_, "Random seed")->capture_default_str();
    split_->add_option("--reduce", keep_fraction_,
                       "Also write a reduced dataset keeping this fraction of negatives");
    split_->add_option("--thin", thin_, "Algorithms whose negatives --reduce thins")
        ->delimiter(',');
    split_->add_option("--out", out_, "Output directory")->required();

    auto add_eval_inputs = [&](CLI::App* sub) {
        sub->add_option("--corpus", corpus_, "Corpus directory, .java file or JSONL")->required();
        sub->add_option("--truth", truth_, "Ground truth JSONL")->required();
        sub->add_option("--mode", mode_, "standard or lower-bound")
            ->capture_default_str()
            ->check(CLI::IsMember({"standard", "lower-bound"}));
        sub->add_option("--split", split_part_, "test, validation or all")
            ->capture_default_str()
            ->check(CLI::IsMember({"test", "validation", "all"}));
        sub->add_option("--split-file", split_file_, "Split JSON; computed from --seed if absent");
        sub->add_option("--ratio", ratio_, "Test fraction when computing a split")
            ->capture_default_str();
        sub->add_option("--seed", seed_, "Split seed")->capture_default_str();
        sub->add_option("--patterns,--pattern", patterns_, "Filter pattern file or directory");
        sub->add_option("--family", family_, "Bundled pattern family when --patterns is absent");
        sub->add_option("--algorithm", algorithms_, "Restrict to these algorithms")->delimiter(',');
        sub->add_flag("--per-algorithm-threshold", per_algorithm_threshold_,
                      "Show each algorithm at its own best ST");
        add_backend(sub);
        sub->add_option("--out", out_, "Output directory")->required();
    };

    evaluate_ = app.add_subcommand("evaluate", "Filter, classify and score one configuration");
    add_eval_inputs(evaluate_);
    evaluate_->add_option("--filter", filter_kind_, "none, keyword or structural")
        ->capture_default_str()
        ->check(CLI::IsMember({"none", "keyword", "structural"}));
    evaluate_->add_option("--style", style_, "Prompt style: " + CLI::detail::join(kStyles))
        ->capture_default_str()
        ->check(style_check);

    sweep_ = app.add_subcommand("sweep", "Evaluate a grid of filters and prompt styles");
    add_eval_inputs(sweep_);
    sweep_->add_option("--filters", filters_, "Filters to combine (comma separated)")
        ->delimiter(',')
        ->check(CLI::IsMember({"none", "keyword", "structural"}));
    sweep_->add_option("--styles", styles_, "Prompt styles (comma separated)")
        ->delimiter(',')
        ->check(style_check);

    report_ = app.add_subcommand("report", "Recompute reports from results JSONL files");
    report_->add_option("--results", results_, "Results JSONL file(s)")->required();
    report_->add_option("--truth", truth_, "Ground truth, required for --mode lower-bound");
    report_->add_option("--mode", mode_, "Recompute in this mode (default: as recorded)")
        ->check(CLI::IsMember({"standard", "lower-bound"}));
    report_->add_flag("--per-algorithm-threshold", per_algorithm_threshold_,
                      "Show each algorithm at its own best ST");
    report_->add_option("--out", out_, "Output directory")->required();
}

int Commands::run(const std::vector<std::string>& argv) {
    if (extract_->parsed()) {
        return extract(argv);
    }
    if (filter_keyword_->parsed()) {
        return filter(argv, false);
    }
    if (filter_structural_->parsed()) {
        return filter(argv, true);
    }
    if (classify_->parsed()) {
        return classify(argv);
    }
    if (obfuscate_->parsed()) {
        return obfuscate(argv);
    }
    if (split_->parsed()) {
        return split(argv);
    }
    if (evaluate_->parsed()) {
        return evaluate(argv);
    }
    if (report_->parsed()) {
        return report(argv);
    }
    if (sweep_->parsed()) {
        return sweep(argv);
    }
    throw ConfigError("no subcommand given");
}

int Commands::extract(const std::vector<std::string>& argv) {
    RunContext ctx("extract", out_, false, *extract_, argv);
    ctx.input("input", input_);
    auto loaded = code_model::load_corpus(input_);
    {
        auto out = open_output(ctx.output(out_));
        code_model::write_corpus_jsonl(loaded.records, out);
    }
    std::size_t parse_failures = 0;
    for (const auto& r : loaded.records) {
        parse_failures += r.has_ast() ? 0 : 1;
    }
    ctx.set("stats", {{"methods", loaded.records.size()},
                      {"parse_failures", parse_failures},
                      {"skipped_regions", loaded.skipped_regions},
                      {"rejected_records", loaded.rejected_records}});
    ctx.write_manifest();
    for (const auto& d : loaded.diagnostics) {
        if (!quiet_) {
            std::cerr << "warning: " << d << '\n';
        }
    }
    std::cout << fmt::format("{} methods extracted ({} without AST, {} regions skipped, {} "
                             "files rejected)\n",
                             loaded.records.size(), parse_failures, loaded.skipped_regions,
                             loaded.rejected_records);
    return 0;
}

int Commands::filter(const std::vector<std::string>& argv, bool structural) {
    CLI::App* sub = structural ? filter_structural_ : filter_keyword_;
    RunContext ctx(structural ? "filter structural" : "filter keywords", out_, false, *sub, argv);
    const auto data_dir = resolve_data_dir(data_dir_);
    const auto kind = structural ? eval::FilterKind::structural : eval::FilterKind::keyword;
    const fs::path pattern_path =
        patterns_.empty() ? default_patterns(data_dir, kind, family_) : fs::path(patterns_);
    ctx.input("corpus", corpus_);
    ctx.input("patterns", pattern_path);
    const Corpus corpus = load_corpus_logged(corpus_, quiet_);
    const auto spec = eval::load_filter(kind, pattern_path);

    std::vector<std::string> algorithms = resolve_algorithms(algorithms_);
    if (algorithms.empty()) {
        for (const auto& a : kAlgorithms) {
            if (spec.covers(std::string(a.id))) {
                algorithms.emplace_back(a.id);
            }
        }
    }
    auto out = open_output(ctx.output(out_));
    nlohmann::json summary = nlohmann::json::object();
    std::size_t total = 0;
    std::size_t excluded = 0;
    for (const auto& algo : algorithms) {
        if (!spec.covers(algo)) {
            throw ConfigError("no pattern for '" + algo + "' under " + pattern_path.string());
        }
        std::size_t algo_excluded = 0;
        if (structural) {
            const auto fr = structural::filter_corpus(spec.structural.at(algo), corpus);
            for (std::size_t i = 0; i < corpus.size(); ++i) {
                const auto& d = fr.decisions[i];
                nlohmann::json row = {{"algorithm", algo},
                                      {"method_id", corpus[i].method_id},
                                      {"passed", d.passed}};
                if (!d.pass_reason.empty()) {
                    row["pass_reason"] = d.pass_reason;
                }
                if (!d.match.env.empty()) {
                    row["captures"] = d.match.env;
                }
                out << row.dump() << '\n';
            }
            algo_excluded = fr.excluded.size();
        } else {
            const auto fr = keyword::filter_corpus(spec.keyword.at(algo), corpus);
            for (std::size_t i = 0; i < corpus.size(); ++i) {
                const auto& d = fr.decisions[i];
                out << nlohmann::json{{"algorithm", algo},
                                      {"method_id", corpus[i].method_id},
                                      {"passed", d.passed},
                                      {"group_hits", d.group_hits}}
                           .dump()
                    << '\n';
            }
            algo_excluded = fr.excluded.size();
        }
        const double red = corpus.empty() ? 0.0
                                          : static_cast<double>(algo_excluded) /
                                                static_cast<double>(corpus.size());
        summary[algo] = {{"excluded", algo_excluded}, {"reduction", red}};
        total += corpus.size();
        excluded += algo_excluded;
        std::cout << fmt::format("{:<18} excluded {:>6} of {:>6} (reduction {:.4f})\n", algo,
                                 algo_excluded, corpus.size(), red);
    }
    ctx.set("summary", summary);
    ctx.set("filter", spec.name());
    ctx.write_manifest();
    if (total > 0) {
        std::cout << fmt::format("overall reduction {:.4f}\n",
                                 static_cast<double>(excluded) / static_cast<double>(total));
    }
    return 0;
}

int Commands::classify(const std::vector<std::string>& argv) {
    RunContext ctx("classify", out_, false, *classify_, argv);
    const auto data_dir = resolve_data_dir(data_dir_);
    ctx.input("corpus", corpus_);
    const Corpus corpus = load_corpus_logged(corpus_, quiet_);
    const auto style = llm::parse_style(style_);
    const auto library = maybe_library(style, examples_, data_dir, ctx);
    auto backend = llm::make_backend(backend_, data_dir);

    llm::BatchOptions options;
    options.parallelism = parallelism_;
    if (!cache_.empty()) {
        options.cache_dir = cache_;
    }
    options.classify.lenient = lenient_;
    options.classify.max_retries = max_retries_;

    auto out = open_output(ctx.output(out_));
    std::size_t ok = 0;
    std::size_t failed = 0;
    std::size_t hits = 0;
    for (const auto& algo : resolve_algorithms(algorithms_)) {
        const auto batch = llm::run_batch(style, algo, corpus, *backend,
                                          library ? &*library : nullptr, options);
        for (const auto& e : batch.entries) {
            nlohmann::json row;
            if (e.verdict) {
                row = llm::verdict_to_json(*e.verdict);
                ++ok;
            } else {
                row = {{"method_id", e.method_id},
                       {"algorithm", algo},
                       {"error_kind", e.error_kind},
                       {"error", e.error}};
                ++failed;
            }
            if (e.cache_hit) {
                row["cache_hit"] = true;
            }
            out << row.dump() << '\n';
        }
        hits += batch.cache_hits;
    }
    ctx.set("backend", backend->id());
    ctx.set("style", style.name());
    ctx.write_manifest();
    std::cout << fmt::format("{} verdicts, {} errors, {} cache hits\n", ok, failed, hits);
    if (failed > 0 && ok == 0) {
        std::cerr << "error: every backend request failed\n";
        return 3;
    }
    return 0;
}

int Commands::obfuscate(const std::vector<std::string>& argv) {
    RunContext ctx("obfuscate", out_, false, *obfuscate_, argv);
    ctx.input("corpus", corpus_);
    const Corpus corpus = load_corpus_logged(corpus_, quiet_);
    obfuscate::ApplyOptions options;
    options.strip_comments = strip_comments_;
    Corpus result;
    result.reserve(corpus.size());
    for (const auto& r : corpus) {
        result.push_back(obfuscate::obfuscate(r, seed_, options));
    }
    {
        auto out = open_output(ctx.output(out_));
        code_model::write_corpus_jsonl(result, out);
    }
    ctx.set("seed", seed_);
    ctx.write_manifest();
    std::cout << fmt::format("{} methods obfuscated with seed {}\n", result.size(), seed_);
    return 0;
}

int Commands::split(const std::vector<std::string>& argv) {
    RunContext ctx("split", out_, true, *split_, argv);
    ctx.input("corpus", corpus_);
    ctx.input("truth", truth_);
    const Corpus corpus = load_corpus_logged(corpus_, quiet_);
    const auto truth = eval::load_ground_truth(truth_, &corpus);
    const auto spec = eval::make_split(corpus, truth, ratio_, seed_);
    eval::save_split(spec, ctx.output("split.json"));
    for (const auto& w : spec.warnings) {
        std::cerr << "warning: " << w << '\n';
    }
    std::cout << fmt::format("{} methods: KS D = {:.6f}, p = {:.6f}\n", spec.assignment.size(),
                             spec.ks.statistic, spec.ks.p_value);
    for (const auto& algo : truth.algorithms()) {
        std::size_t counts[2][2] = {{0, 0}, {0, 0}};
        for (const auto& e : truth.entries()) {
            if (e.algorithm == algo) {
                const auto part = spec.assignment.at(e.method_id);
                ++counts[part == eval::SplitPart::test ? 0 : 1][e.label == eval::Label::positive ? 0 : 1];
            }
        }
        std::cout << fmt::format("  {:<18} test {:>5}+ {:>6}-   validation {:>5}+ {:>6}-\n", algo,
                                 counts[0][0], counts[0][1], counts[1][0], counts[1][1]);
    }
    if (keep_fraction_ > 0.0) {
        const auto thin = thin_.empty() ? eval::kDefaultThinned : thin_;
        const auto reduced = eval::reduced_dataset(corpus, truth, keep_fraction_, thin, seed_, &spec);
        {
            auto out = open_output(ctx.output("reduced_corpus.jsonl"));
            code_model::write_corpus_jsonl(reduced.corpus, out);
        }
        {
            auto out = open_output(ctx.output("reduced_truth.jsonl"));
            eval::write_ground_truth(reduced.truth, out);
        }
        std::cout << fmt::format("reduced dataset: {} methods, KS D = {:.6f}, p = {:.6f}\n",
                                 reduced.corpus.size(), reduced.ks->statistic,
                                 reduced.ks->p_value);
        ctx.set("reduced_ks", {{"statistic", reduced.ks->statistic},
                               {"p_value", reduced.ks->p_value}});
    }
    ctx.set("seed", seed_);
    ctx.set("ks", {{"statistic", spec.ks.statistic}, {"p_value", spec.ks.p_value}});
    ctx.write_manifest();
    return 0;
}

namespace {

struct EvalInputs {
    Corpus corpus;
    eval::GroundTruth truth;
    std::optional<eval::SplitSpec> split;
    std::optional<llm::ExampleLibrary> library;
};

}  // namespace

int Commands::evaluate(const std::vector<std::string>& argv) {
    filters_ = {filter_kind_};
    styles_ = {style_};
    return sweep(argv);
}

int Commands::sweep(const std::vector<std::string>& argv) {
    const bool single = evaluate_->parsed();
    RunContext ctx(single ? "evaluate" : "sweep", out_, true, single ? *evaluate_ : *sweep_, argv);
    const auto data_dir = resolve_data_dir(data_dir_);
    if (filters_.empty()) {
        filters_ = {"none"};
    }
    if (styles_.empty()) {
        styles_ = {"score"};
    }
    ctx.input("corpus", corpus_);
    ctx.input("truth", truth_);

    EvalInputs in;
    in.corpus = load_corpus_logged(corpus_, quiet_);
    in.truth = eval::load_ground_truth(truth_, &in.corpus);
    eval::PipelineOptions options;
    options.mode = eval::parse_mode(mode_);
    options.algorithms = resolve_algorithms(algorithms_);
    options.batch.parallelism = parallelism_;
    if (!cache_.empty()) {
        options.batch.cache_dir = cache_;
    }
    options.batch.classify.lenient = lenient_;
    options.batch.classify.max_retries = max_retries_;
    if (split_part_ != "all") {
        if (!split_file_.empty()) {
            ctx.input("split", split_file_);
            in.split = eval::load_split(split_file_);
        } else {
            in.split = eval::make_split(in.corpus, in.truth, ratio_, seed_);
            eval::save_split(*in.split, ctx.output("split.json"));
        }
        for (const auto& w : in.split->warnings) {
            std::cerr << "warning: " << w << '\n';
        }
        options.split = &*in.split;
        options.part = split_part_ == "test" ? eval::SplitPart::test : eval::SplitPart::validation;
    }

    auto backend = llm::make_backend(backend_, data_dir);
    std::vector<eval::RunResults> runs;
    std::vector<eval::MetricsReport> reports;
    for (const auto& f : filters_) {
        const auto kind = eval::parse_filter_kind(f);
        eval::FilterSpec spec;
        if (kind != eval::FilterKind::none) {
            const fs::path path =
                patterns_.empty() ? default_patterns(data_dir, kind, family_) : fs::path(patterns_);
            ctx.input("patterns:" + f, path);
            spec = eval::load_filter(kind, path);
        }
        for (const auto& s : styles_) {
            const auto style = llm::parse_style(s);
            if (style.variant == llm::Variant::icl && !in.library) {
                in.library = maybe_library(style, examples_, data_dir, ctx);
            }
            auto results = eval::run_pipeline(in.corpus, in.truth, spec, style, *backend,
                                              in.library ? &*in.library : nullptr, options);
            auto report = options.mode == eval::Mode::lower_bound
                              ? eval::lower_bound_mode(results, in.truth)
                              : eval::sweep_thresholds(results);
            if (!quiet_) {
                print_report(report, per_algorithm_threshold_);
            }
            runs.push_back(std::move(results));
            reports.push_back(std::move(report));
        }
    }

    {
        auto out = open_output(ctx.output("results.jsonl"));
        for (const auto& r : runs) {
            eval::write_results(r, out);
        }
    }
    eval::write_report_files(reports, ctx.output("report.csv"), ctx.output("report.json"));
    ctx.set("seed", seed_);
    ctx.set("backend", backend->id());
    ctx.write_manifest();
    return run_status(runs);
}

int Commands::report(const std::vector<std::string>& argv) {
    RunContext ctx("report", out_, true, *report_, argv);
    std::optional<eval::GroundTruth> truth;
    if (!truth_.empty()) {
        ctx.input("truth", truth_);
        truth = eval::load_ground_truth(truth_);
    }
    std::vector<eval::MetricsReport> reports;
    for (const auto& path : results_) {
        ctx.input("results:" + path, path);
        for (auto& run : eval::load_results(path)) {
            const auto mode = mode_.empty() ? run.mode : eval::parse_mode(mode_);
            if (mode == eval::Mode::lower_bound) {
                if (!truth) {
                    throw ConfigError("--mode lower-bound needs --truth");
                }
                reports.push_back(eval::lower_bound_mode(run, *truth));
            } else {
                if (truth) {
                    eval::relabel(run, *truth);
                }
                run.mode = eval::Mode::standard;
                reports.push_back(eval::sweep_thresholds(run));
            }
            if (!quiet_) {
                print_report(reports.back(), per_algorithm_threshold_);
            }
        }
    }
    eval::write_report_files(reports, ctx.output("report.csv"), ctx.output("report.json"));
    ctx.write_manifest();
    return 0;
}

}  // namespace algorec::cli
