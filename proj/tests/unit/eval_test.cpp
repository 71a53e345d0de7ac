#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "algorec/errors.hpp"
#include "algorec/eval/ground_truth.hpp"
#include "algorec/eval/metrics.hpp"
#include "algorec/eval/pipeline.hpp"
#include "algorec/eval/report.hpp"
#include "algorec/eval/split.hpp"
#include "test_support.hpp"

using namespace algorec;
using namespace algorec::eval;
using code_model::make_record;
using nlohmann::json;

namespace {

const std::vector<std::string> kAlgorithms{"prime_factors", "gcd",           "fibonacci",
                                           "palindrome",    "bubble_sort",   "binary_search",
                                           "transpose_matrix"};

GroundTruth mini_truth(const code_model::Corpus& corpus) {
    return load_ground_truth(testkit::data_dir() / "mini_corpus" / "truth.jsonl", &corpus);
}

json expectations() {
    return json::parse(testkit::read_file(testkit::fixtures_dir() / "mini_corpus_expectations.json"));
}

Confusion from_oracle(const json& quad) {
    return {quad[0].get<std::size_t>(), quad[1].get<std::size_t>(), quad[2].get<std::size_t>(),
            quad[3].get<std::size_t>()};
}

GroundTruth parse_truth(const std::string& text, const code_model::Corpus* corpus = nullptr) {
    std::istringstream in(text);
    return parse_ground_truth(in, corpus);
}

ResultRow row(const std::string& algo, const std::string& id, std::optional<Label> label, int score,
              bool excluded = false) {
    ResultRow r;
    r.algorithm = algo;
    r.method_id = id;
    r.label = label;
    r.excluded = excluded;
    if (!excluded) {
        r.raw_score = score;
    }
    return r;
}

/// Corpus of n small methods of varying size.
code_model::Corpus synthetic_corpus(std::size_t n) {
    code_model::Corpus c;
    for (std::size_t i = 0; i < n; ++i) {
        std::string body;
        for (std::size_t k = 0; k < i % 7; ++k) {
            body += "x++;";
        }
        c.push_back(make_record("m" + std::to_string(i), "S.java", "f", "void f(){" + body + "}"));
    }
    return c;
}

RunResults mock_run(FilterKind kind, Mode mode, const code_model::Corpus& corpus, const GroundTruth& truth,
                    const std::string& filter_path = "") {
    auto backend = llm::MockBackend::from_data_dir(testkit::data_dir());
    FilterSpec filter;
    if (kind != FilterKind::none) {
        filter = load_filter(kind, filter_path);
    }
    PipelineOptions opts;
    opts.mode = mode;
    return run_pipeline(corpus, truth, filter, llm::parse_style("score"), *backend, nullptr, opts);
}

}  // namespace

TEST(GroundTruthTest, MiniTruthLoads) {
    const auto corpus = testkit::mini_corpus();
    const auto truth = mini_truth(corpus);
    EXPECT_EQ(truth.algorithms(), kAlgorithms);
    EXPECT_EQ(truth.entries().size(), 142u);
    for (const auto& a : kAlgorithms) {
        EXPECT_EQ(truth.count(a, Label::positive), 10u) << a;
    }
    EXPECT_EQ(truth.entries().front().method_id, "binary_search/negative/Lookup.java:7:linearSearch");
}

TEST(GroundTruthTest, Errors) {
    EXPECT_THROW(parse_truth("{\"method_id\":\"a\",\"algorithm\":\"gcd\",\"label\":\"positive\"}\n"
                             "{\"method_id\":\"a\",\"algorithm\":\"GCD\",\"label\":\"negative\"}\n"),
                 DataError);
    EXPECT_THROW(parse_truth("{\"method_id\":\"a\",\"algorithm\":\"quicksort\",\"label\":\"positive\"}\n"),
                 DataError);
    EXPECT_THROW(parse_truth("{\"method_id\":\"a\",\"algorithm\":\"gcd\",\"label\":\"maybe\"}\n"), DataError);
    EXPECT_THROW(parse_truth("not json\n"), DataError);
    const code_model::Corpus corpus{make_record("a", "A.java", "f", "void f(){}")};
    EXPECT_THROW(parse_truth("{\"method_id\":\"b\",\"algorithm\":\"gcd\",\"label\":\"positive\"}\n", &corpus),
                 DataError);
    const auto ok = parse_truth("{\"method_id\":\"a\",\"algorithm\":\"Greatest Common Divisor\",\"label\":true}\n",
                                &corpus);
    EXPECT_EQ(ok.label("gcd", "a"), Label::positive);
    EXPECT_EQ(ok.label("gcd", "z"), std::nullopt);
}

TEST(GroundTruthTest, WriteRoundTrip) {
    const auto corpus = testkit::mini_corpus();
    const auto truth = mini_truth(corpus);
    std::stringstream s;
    write_ground_truth(truth, s);
    const auto again = parse_ground_truth(s, &corpus);
    ASSERT_EQ(again.entries().size(), truth.entries().size());
    for (std::size_t i = 0; i < truth.entries().size(); ++i) {
        EXPECT_EQ(again.entries()[i].method_id, truth.entries()[i].method_id);
        EXPECT_EQ(again.entries()[i].label, truth.entries()[i].label);
    }
}

TEST(Ks, MatchesScipyOracle) {
    const auto j = json::parse(testkit::read_file(testkit::fixtures_dir() / "ks_oracle.json"));
    for (const auto& c : j.at("pairs")) {
        const auto a = c.at("a").get<std::vector<double>>();
        const auto b = c.at("b").get<std::vector<double>>();
        const auto r = ks_test(a, b);
        EXPECT_NEAR(r.statistic, c.at("d").get<double>(), 1e-12);
        EXPECT_NEAR(r.p_value, c.at("p").get<double>(), 1e-9);
        EXPECT_EQ(r.n, a.size());
    }
    for (const auto& q : j.at("kolmogorov_q")) {
        EXPECT_NEAR(kolmogorov_q(q.at("lambda").get<double>()), q.at("q").get<double>(), 1e-12);
    }
}

TEST(Ks, BruteForceScan) {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> a(1 + rng() % 50);
        std::vector<double> b(1 + rng() % 50);
        for (auto& x : a) {
            x = static_cast<double>(rng() % 30);
        }
        for (auto& x : b) {
            x = static_cast<double>(rng() % 30 + trial % 4);
        }
        double best = 0.0;
        std::vector<double> pts(a);
        pts.insert(pts.end(), b.begin(), b.end());
        for (double x : pts) {
            const auto fa = static_cast<double>(std::count_if(a.begin(), a.end(), [&](double v) { return v <= x; }));
            const auto fb = static_cast<double>(std::count_if(b.begin(), b.end(), [&](double v) { return v <= x; }));
            best = std::max(best, std::abs(fa / static_cast<double>(a.size()) - fb / static_cast<double>(b.size())));
        }
        EXPECT_NEAR(ks_statistic(a, b), best, 1e-12);
    }
}

TEST(Ks, DegenerateCases) {
    std::vector<double> a;
    std::vector<double> far;
    for (int i = 1; i <= 100; ++i) {
        a.push_back(i);
    }
    for (int i = 200; i <= 300; ++i) {
        far.push_back(i);
    }
    EXPECT_EQ(ks_statistic(a, a), 0.0);
    EXPECT_EQ(ks_test(a, a).p_value, 1.0);
    EXPECT_EQ(ks_statistic(a, far), 1.0);
    EXPECT_LT(ks_test(a, far).p_value, 1e-12);
}

TEST(Split, StratifiedWithinOne) {
    const auto corpus = testkit::mini_corpus();
    const auto truth = mini_truth(corpus);
    const auto split = make_split(corpus, truth, 0.7, 42);
    EXPECT_EQ(split.assignment.size(), corpus.size());
    for (const auto& a : kAlgorithms) {
        for (const auto l : {Label::positive, Label::negative}) {
            std::size_t total = 0;
            std::size_t test = 0;
            for (const auto& e : truth.entries()) {
                if (e.algorithm == a && e.label == l) {
                    ++total;
                    test += split.assignment.at(e.method_id) == SplitPart::test;
                }
            }
            EXPECT_LE(std::abs(static_cast<double>(test) - 0.7 * static_cast<double>(total)), 1.0)
                << a << " " << to_string(l);
        }
    }
    EXPECT_EQ(split.ks, split_ks(corpus, split));
    EXPECT_EQ(make_split(corpus, truth, 0.7, 42), split);
    EXPECT_NE(make_split(corpus, truth, 0.7, 43).assignment, split.assignment);
}

TEST(Split, Errors) {
    const auto corpus = testkit::mini_corpus();
    const auto truth = mini_truth(corpus);
    EXPECT_THROW(make_split(corpus, truth, 0.0, 1), ConfigError);
    EXPECT_THROW(make_split(corpus, truth, 1.0, 1), ConfigError);
    const code_model::Corpus one{make_record("a", "A.java", "f", "void f(){}"),
                                 make_record("b", "A.java", "g", "void g(){}")};
    const auto thin = parse_truth("{\"method_id\":\"a\",\"algorithm\":\"gcd\",\"label\":\"positive\"}\n"
                                  "{\"method_id\":\"b\",\"algorithm\":\"gcd\",\"label\":\"negative\"}\n",
                                  &one);
    EXPECT_THROW(make_split(one, thin, 0.7, 1), DataError);
}

TEST(Split, JsonRoundTrip) {
    const auto corpus = testkit::mini_corpus();
    const auto split = make_split(corpus, mini_truth(corpus), 0.7, 5);
    const auto path = testkit::scratch_dir("split") / "split.json";
    save_split(split, path);
    EXPECT_EQ(load_split(path), split);
}

TEST(Reduced, PaperScaleBubbleSortNegatives) {
    const auto corpus = synthetic_corpus(16301 + 20);
    std::string text;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        text += json{{"method_id", corpus[i].method_id},
                     {"algorithm", "bubble_sort"},
                     {"label", i < 20 ? "positive" : "negative"}}
                    .dump() +
                "\n";
    }
    const auto truth = parse_truth(text, &corpus);
    const auto r = reduced_dataset(corpus, truth, 0.1, kDefaultThinned, 9);
    EXPECT_EQ(r.kept_negatives.at("bubble_sort"), 1630u);
    EXPECT_EQ(r.truth.count("bubble_sort", Label::negative), 1630u);
    EXPECT_EQ(r.truth.count("bubble_sort", Label::positive), 20u);
    EXPECT_EQ(r.corpus.size(), 1650u);
}

TEST(Reduced, IdentityAndPositives) {
    const auto corpus = testkit::mini_corpus();
    const auto truth = mini_truth(corpus);
    const auto same = reduced_dataset(corpus, truth, 1.0, kDefaultThinned, 3);
    EXPECT_EQ(same.corpus.size(), corpus.size());
    EXPECT_EQ(same.truth.entries().size(), truth.entries().size());
    const auto split = make_split(corpus, truth, 0.7, 3);
    const auto thin = reduced_dataset(corpus, truth, 0.1, kDefaultThinned, 3, &split);
    ASSERT_TRUE(thin.ks);
    for (const auto& a : kAlgorithms) {
        EXPECT_EQ(thin.truth.count(a, Label::positive), truth.count(a, Label::positive)) << a;
        const bool thinned = a == "bubble_sort" || a == "binary_search";
        if (!thinned) {
            EXPECT_EQ(thin.truth.count(a, Label::negative), truth.count(a, Label::negative)) << a;
        } else {
            EXPECT_LT(thin.truth.count(a, Label::negative), truth.count(a, Label::negative)) << a;
        }
    }
}

TEST(Metrics, Arithmetic) {
    const Confusion c{8, 2, 2, 0};
    EXPECT_DOUBLE_EQ(precision(c), 0.8);
    EXPECT_DOUBLE_EQ(recall(c), 0.8);
    EXPECT_DOUBLE_EQ(f1_score(0.8, 0.8), 0.8);
    EXPECT_DOUBLE_EQ(macro_f1({1.0, 0.5}), 0.75);
    EXPECT_EQ(macro_f1({1.0, 0.5, 0.75, 0.6, 0.8, 0.9, 0.7}), 0.75);
    EXPECT_EQ(precision({}), 0.0);
    EXPECT_EQ(recall({}), 0.0);
    EXPECT_EQ(f1_score(0.0, 0.0), 0.0);
    EXPECT_EQ(macro_f1({}), 0.0);
}

TEST(Metrics, AllFoursTieToHighestThreshold) {
    RunResults r;
    for (int i = 0; i < 5; ++i) {
        r.rows.push_back(row("gcd", "p" + std::to_string(i), Label::positive, 4));
        r.rows.push_back(row("gcd", "n" + std::to_string(i), Label::negative, 4));
    }
    const auto m = sweep_thresholds(r);
    ASSERT_EQ(m.thresholds.size(), 4u);
    for (const auto& t : m.thresholds) {
        EXPECT_EQ(t.per_algorithm, m.thresholds[0].per_algorithm);
    }
    EXPECT_EQ(m.best_threshold, 4);
    EXPECT_EQ(m.best_threshold_per_algorithm.at("gcd"), 4);
}

TEST(Metrics, ExcludedPositiveIsFalseNegative) {
    RunResults r;
    r.rows.push_back(row("gcd", "p", Label::positive, 0, true));
    for (int st = 1; st <= 4; ++st) {
        EXPECT_EQ(confusion_at(r.rows, "gcd", st, Mode::standard), (Confusion{0, 0, 1, 0}));
    }
    EXPECT_EQ(sweep_thresholds(r).excluded_true_positives.at("gcd"), 1u);
}

TEST(Metrics, SweepProperties) {
    std::mt19937_64 rng(2718);
    for (int trial = 0; trial < 1000; ++trial) {
        RunResults r;
        const std::size_t algos = 1 + rng() % 7;
        std::map<std::string, std::size_t> sizes;
        std::map<std::string, std::size_t> excluded;
        for (std::size_t k = 0; k < algos; ++k) {
            const auto& a = kAlgorithms[k];
            const std::size_t n = 1 + rng() % 25;
            sizes[a] = n;
            for (std::size_t i = 0; i < n; ++i) {
                const bool ex = rng() % 4 == 0;
                excluded[a] += ex;
                r.rows.push_back(row(a, "m" + std::to_string(i), rng() % 3 == 0 ? Label::positive : Label::negative,
                                     static_cast<int>(rng() % 5), ex));
            }
        }
        const auto m = sweep_thresholds(r);
        double total_ex = 0;
        double total = 0;
        double macro_red = 0;
        for (const auto& [a, n] : sizes) {
            total += static_cast<double>(n);
            total_ex += static_cast<double>(excluded[a]);
            macro_red += static_cast<double>(excluded[a]) / static_cast<double>(n);
        }
        ASSERT_NEAR(m.reduction_micro, total_ex / total, 1e-12);
        ASSERT_NEAR(m.reduction_macro, macro_red / static_cast<double>(sizes.size()), 1e-12);
        double best = -1;
        for (const auto& t : m.thresholds) {
            double sum = 0;
            for (const auto& am : t.per_algorithm) {
                const auto& c = am.confusion;
                ASSERT_EQ(c.tp + c.fp + c.fn + c.tn, sizes.at(am.algorithm));
                sum += am.f1;
                if (t.st > 1) {
                    const auto& prev = m.at(t.st - 1).per_algorithm;
                    const auto it = std::find_if(prev.begin(), prev.end(),
                                                 [&](const auto& x) { return x.algorithm == am.algorithm; });
                    ASSERT_LE(am.recall, it->recall);
                    ASSERT_LE(c.fp, it->confusion.fp);
                }
            }
            ASSERT_NEAR(t.macro_f1, sum / static_cast<double>(sizes.size()), 1e-12);
            best = std::max(best, t.macro_f1);
        }
        ASSERT_EQ(m.at(m.best_threshold).macro_f1, best);
        for (int st = m.best_threshold + 1; st <= 4; ++st) {
            ASSERT_LT(m.at(st).macro_f1, best);
        }
    }
}

TEST(LowerBound, TenOfEleven) {
    RunResults r;
    for (int i = 0; i < 10; ++i) {
        r.rows.push_back(row("gcd", "p" + std::to_string(i), Label::positive, 4));
        r.rows.push_back(row("gcd", "n" + std::to_string(i), Label::negative, 0));
    }
    r.rows.push_back(row("gcd", "unknown", std::nullopt, 4));
    r.rows.push_back(row("gcd", "unknown-neg", std::nullopt, 0));
    r.mode = Mode::lower_bound;
    const auto m = sweep_thresholds(r);
    EXPECT_EQ(m.at(4).per_algorithm[0].confusion, (Confusion{10, 1, 0, 10}));
    EXPECT_DOUBLE_EQ(m.at(4).per_algorithm[0].precision, 10.0 / 11.0);
    r.mode = Mode::standard;
    EXPECT_DOUBLE_EQ(sweep_thresholds(r).at(4).per_algorithm[0].precision, 1.0);
}

TEST(LowerBound, NoUnlabeledRowsMatchesStandard) {
    RunResults r;
    for (int i = 0; i < 12; ++i) {
        r.rows.push_back(row("fibonacci", "m" + std::to_string(i), i % 3 ? Label::negative : Label::positive, i % 5));
    }
    auto standard = sweep_thresholds(r);
    r.mode = Mode::lower_bound;
    auto lower = sweep_thresholds(r);
    EXPECT_EQ(standard.thresholds, lower.thresholds);
}

TEST(LowerBound, MiniCorpusWithUnlabeledPositives) {
    const auto corpus = testkit::mini_corpus();
    const auto truth = mini_truth(corpus);
    const auto exp = expectations();
    const auto run = mock_run(FilterKind::none, Mode::lower_bound, corpus, truth);
    EXPECT_EQ(run.rows.size(), corpus.size() * kAlgorithms.size());
    for (const auto& [a, per_st] : exp.at("lower_bound").items()) {
        for (int st = 1; st <= 4; ++st) {
            EXPECT_EQ(confusion_at(run.rows, a, st, Mode::lower_bound), from_oracle(per_st.at(std::to_string(st))))
                << a << " ST" << st;
        }
    }
    for (const auto& [a, id] : exp.at("unlabeled_positives").items()) {
        const auto it = std::find_if(run.rows.begin(), run.rows.end(), [&](const ResultRow& r) {
            return r.algorithm == a && r.method_id == id.get<std::string>();
        });
        ASSERT_NE(it, run.rows.end());
        EXPECT_FALSE(it->label);
        EXPECT_EQ(it->raw_score, exp.at("mock_scores").at(a).at(id.get<std::string>()).get<int>()) << id;
        EXPECT_GE(*it->raw_score, 1);
    }
    const auto relabeled = lower_bound_mode(run, truth);
    EXPECT_EQ(relabeled.mode, Mode::lower_bound);
}

TEST(Pipeline, MiniCorpusMatchesOracle) {
    const auto corpus = testkit::mini_corpus();
    const auto truth = mini_truth(corpus);
    const auto exp = expectations();
    const auto pf = testkit::data_dir() / "patterns" / "structural" / "prominent_feature";
    for (const auto& [name, kind] :
         std::vector<std::pair<std::string, FilterKind>>{{"none", FilterKind::none}, {"structural", FilterKind::structural}}) {
        const auto run = mock_run(kind, Mode::standard, corpus, truth, pf.string());
        const auto m = sweep_thresholds(run);
        const auto& e = exp.at("runs").at(name);
        for (const auto& a : kAlgorithms) {
            for (int st = 1; st <= 4; ++st) {
                EXPECT_EQ(confusion_at(run.rows, a, st, Mode::standard),
                          from_oracle(e.at("confusion").at(a).at(std::to_string(st))))
                    << name << " " << a << " ST" << st;
            }
            EXPECT_EQ(m.excluded_true_positives.at(a), e.at("excluded_true_positives").at(a).get<std::size_t>());
        }
        EXPECT_NEAR(m.reduction_micro, e.at("reduction_micro").get<double>(), 1e-12);
        EXPECT_NEAR(m.reduction_macro, e.at("reduction_macro").get<double>(), 1e-12);
    }
}

TEST(Pipeline, PassAllFilterEqualsNone) {
    const auto corpus = testkit::mini_corpus();
    const auto truth = mini_truth(corpus);
    auto backend = llm::MockBackend::from_data_dir(testkit::data_dir());
    FilterSpec pass_all;
    pass_all.kind = FilterKind::structural;
    for (const auto& a : kAlgorithms) {
        auto p = structural::parse_dsl("(any)");
        p.algorithm = a;
        pass_all.structural[a] = p;
    }
    const auto style = llm::parse_style("score");
    const auto none = run_pipeline(corpus, truth, FilterSpec{}, style, *backend, nullptr, {});
    const auto all = run_pipeline(corpus, truth, pass_all, style, *backend, nullptr, {});
    auto a = sweep_thresholds(none);
    auto b = sweep_thresholds(all);
    EXPECT_EQ(a.thresholds, b.thresholds);
    EXPECT_EQ(b.reduction_micro, 0.0);
    ASSERT_EQ(none.rows.size(), all.rows.size());
    for (std::size_t i = 0; i < none.rows.size(); ++i) {
        EXPECT_EQ(none.rows[i].raw_score, all.rows[i].raw_score);
        EXPECT_FALSE(all.rows[i].excluded);
    }
}

TEST(Pipeline, SplitRestriction) {
    const auto corpus = testkit::mini_corpus();
    const auto truth = mini_truth(corpus);
    const auto split = make_split(corpus, truth, 0.7, 11);
    auto backend = llm::MockBackend::from_data_dir(testkit::data_dir());
    PipelineOptions opts;
    opts.split = &split;
    opts.part = SplitPart::validation;
    const auto run = run_pipeline(corpus, truth, FilterSpec{}, llm::parse_style("score"), *backend, nullptr, opts);
    ASSERT_FALSE(run.rows.empty());
    for (const auto& r : run.rows) {
        EXPECT_EQ(split.assignment.at(r.method_id), SplitPart::validation);
    }
}

TEST(Pipeline, ResultsFileRoundTrip) {
    const auto corpus = testkit::mini_corpus();
    const auto truth = mini_truth(corpus);
    const auto run = mock_run(FilterKind::structural, Mode::standard, corpus, truth,
                              (testkit::data_dir() / "patterns" / "structural" / "prominent_feature").string());
    std::stringstream s;
    write_results(run, s);
    write_results(mock_run(FilterKind::none, Mode::standard, corpus, truth), s);
    const auto back = read_results(s);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[0], run);
    EXPECT_EQ(sweep_thresholds(back[0]), sweep_thresholds(run));
}

TEST(Report, GoldenCsv) {
    const auto corpus = testkit::mini_corpus();
    const auto truth = mini_truth(corpus);
    std::vector<MetricsReport> reports{
        sweep_thresholds(mock_run(FilterKind::none, Mode::standard, corpus, truth)),
        sweep_thresholds(mock_run(FilterKind::structural, Mode::standard, corpus, truth,
                                  (testkit::data_dir() / "patterns" / "structural" / "prominent_feature").string()))};
    std::ostringstream csv;
    write_report_csv(reports, csv);
    EXPECT_EQ(csv.str(), testkit::read_file(testkit::golden_dir() / "mini_report.csv"));
}

TEST(Report, HeaderOnlyWhenEmpty) {
    std::ostringstream csv;
    write_report_csv({}, csv);
    EXPECT_EQ(csv.str(),
              "filter,style,backend,algorithm,ST,precision,recall,f1,macro_f1,reduction_micro,reduction_macro,"
              "excluded_TPs\n");
}

TEST(Report, JsonRoundTripAndFiles) {
    const auto corpus = testkit::mini_corpus();
    const auto truth = mini_truth(corpus);
    const auto m = sweep_thresholds(mock_run(FilterKind::none, Mode::standard, corpus, truth));
    EXPECT_EQ(report_from_json(report_to_json(m)), m);
    EXPECT_EQ(reports_from_json(reports_to_json({m, m})).size(), 2u);
    const auto dir = testkit::scratch_dir("report");
    write_report_files({m}, dir / "r.csv", dir / "r.json");
    EXPECT_TRUE(std::filesystem::exists(dir / "r.csv"));
    EXPECT_EQ(reports_from_json(json::parse(testkit::read_file(dir / "r.json")))[0], m);
    EXPECT_THROW(write_report_files({m}, dir / "missing" / "x" / "r.csv", dir / "r2.json"), DataError);
}
