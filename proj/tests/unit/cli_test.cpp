#include <gtest/gtest.h>

#include <fstream>

#include <nlohmann/json.hpp>

#include "test_support.hpp"

using namespace algorec;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

std::string cli() { return q(testkit::cli_path()) + " -q"; }

std::string mini(const std::string& file) { return q(testkit::data_dir() / "mini_corpus" / file); }

testkit::CommandResult evaluate(const fs::path& out, const std::string& extra = "") {
    return testkit::run_command(cli() + " evaluate --corpus " + mini("corpus.jsonl") + " --truth " +
                                mini("truth.jsonl") + " --out " + q(out) + " " + extra);
}

std::size_t line_count(const fs::path& p) {
    std::ifstream in(p);
    std::size_t n = 0;
    for (std::string line; std::getline(in, line);) {
        n += !line.empty();
    }
    return n;
}

}  // namespace

TEST(Cli, EvaluateWritesArtifacts) {
    const auto out = testkit::scratch_dir("cli_eval");
    const auto r = evaluate(out, "--filter structural");
    ASSERT_EQ(r.exit_code, 0) << r.output;
    for (const auto* f : {"results.jsonl", "report.csv", "report.json", "manifest.json"}) {
        EXPECT_TRUE(fs::exists(out / f)) << f;
    }
    EXPECT_EQ(line_count(out / "results.jsonl"), 142u);
    EXPECT_EQ(line_count(out / "report.csv"), 1u + 7 * 4);
    const auto manifest = json::parse(testkit::read_file(out / "manifest.json"));
    EXPECT_EQ(manifest.at("command"), "evaluate");
    EXPECT_EQ(manifest.at("backend"), "mock");
    EXPECT_EQ(manifest.at("seed"), 1);
    EXPECT_EQ(manifest.at("inputs").at("corpus").at("sha256").get<std::string>().size(), 64u);
    EXPECT_EQ(manifest.at("options").at("filter"), "structural");
}

TEST(Cli, RerunsAreByteIdentical) {
    const auto a = testkit::scratch_dir("cli_rerun_a");
    const auto b = testkit::scratch_dir("cli_rerun_b");
    ASSERT_EQ(evaluate(a, "--filter keyword --style yesno -j 4").exit_code, 0);
    ASSERT_EQ(evaluate(b, "--filter keyword --style yesno -j 1").exit_code, 0);
    for (const auto* f : {"results.jsonl", "report.csv", "report.json"}) {
        EXPECT_EQ(testkit::read_file(a / f), testkit::read_file(b / f)) << f;
    }
}

TEST(Cli, ReportRecomputesFromResults) {
    const auto out = testkit::scratch_dir("cli_report");
    ASSERT_EQ(evaluate(out / "run").exit_code, 0);
    const auto r = testkit::run_command(cli() + " report --results " + q(out / "run" / "results.jsonl") +
                                        " --out " + q(out / "again"));
    ASSERT_EQ(r.exit_code, 0) << r.output;
    EXPECT_EQ(testkit::read_file(out / "again" / "report.csv"), testkit::read_file(out / "run" / "report.csv"));
}

TEST(Cli, ExitCodes) {
    const auto out = testkit::scratch_dir("cli_exit");
    EXPECT_EQ(testkit::run_command(cli() + " evaluate --no-such-flag").exit_code, 1);
    EXPECT_EQ(testkit::run_command(cli() + " frobnicate").exit_code, 1);
    EXPECT_EQ(evaluate(out, "--style icl:3p3n").exit_code, 1);
    const auto missing = testkit::run_command(cli() + " evaluate --corpus /nonexistent/corpus.jsonl --truth " +
                                              mini("truth.jsonl") + " --out " + q(out));
    EXPECT_EQ(missing.exit_code, 2) << missing.output;
    const auto bad_pattern = testkit::scratch_dir("cli_bad_pattern") / "x.pat";
    std::ofstream(bad_pattern) << "(loop (iff))\n";
    EXPECT_EQ(testkit::run_command(cli() + " filter structural --corpus " + mini("corpus.jsonl") +
                                   " --patterns " + q(bad_pattern) + " --out " + q(out / "f.jsonl"))
                  .exit_code,
              2);
    const auto http = testkit::run_command("env -u ALGOREC_API_BASE -u ALGOREC_MODEL " + cli() +
                                           " classify --corpus " + mini("corpus.jsonl") +
                                           " --algorithm gcd --backend http --out " + q(out / "v.jsonl"));
    EXPECT_EQ(http.exit_code, 1) << http.output;
}

TEST(Cli, UnreachableBackendExitsThree) {
    const auto out = testkit::scratch_dir("cli_backend");
    const auto r = testkit::run_command(
        "ALGOREC_API_BASE=http://127.0.0.1:9 ALGOREC_MODEL=m ALGOREC_TIMEOUT_S=1 " + cli() +
        " classify --max-retries 0 --corpus " + q(testkit::data_dir() / "mock" / "fixtures" / "gcd.java") +
        " --algorithm gcd --backend http --out " + q(out / "v.jsonl"));
    EXPECT_EQ(r.exit_code, 3) << r.output;
}

TEST(Cli, ExtractFilterClassifyObfuscateSplit) {
    const auto out = testkit::scratch_dir("cli_tools");
    auto run = [&](const std::string& args) {
        const auto r = testkit::run_command(cli() + " " + args);
        EXPECT_EQ(r.exit_code, 0) << args << "\n" << r.output;
        return r;
    };
    run("extract --input " + q(testkit::data_dir() / "mini_corpus" / "java") + " --out " + q(out / "c.jsonl"));
    EXPECT_EQ(line_count(out / "c.jsonl"), 147u);
    run("filter keywords --family recall_focused --algorithm gcd --corpus " + q(out / "c.jsonl") + " --out " +
        q(out / "kw.jsonl"));
    EXPECT_EQ(line_count(out / "kw.jsonl"), 147u);
    run("filter structural --algorithm gcd --corpus " + mini("corpus.jsonl") + " --out " + q(out / "st.jsonl"));
    run("classify --style cot --algorithm gcd --corpus " + mini("corpus.jsonl") + " --out " + q(out / "v.jsonl"));
    EXPECT_EQ(line_count(out / "v.jsonl"), 147u);
    run("obfuscate --seed 7 --corpus " + mini("corpus.jsonl") + " --out " + q(out / "o1.jsonl"));
    run("obfuscate --seed 7 --corpus " + mini("corpus.jsonl") + " --out " + q(out / "o2.jsonl"));
    EXPECT_EQ(testkit::read_file(out / "o1.jsonl"), testkit::read_file(out / "o2.jsonl"));
    const auto first = json::parse(testkit::read_file(out / "o1.jsonl").substr(0, testkit::read_file(out / "o1.jsonl").find('\n')));
    EXPECT_EQ(first.at("obfuscated"), true);
    EXPECT_EQ(first.at("seed"), 7);
    run("split --seed 3 --reduce 0.1 --corpus " + mini("corpus.jsonl") + " --truth " + mini("truth.jsonl") +
        " --out " + q(out / "split"));
    const auto split = json::parse(testkit::read_file(out / "split" / "split.json"));
    EXPECT_EQ(split.at("assignment").size(), 147u);
    EXPECT_TRUE(split.at("ks").contains("p_value"));
}

TEST(Cli, SweepAndConfigFile) {
    const auto out = testkit::scratch_dir("cli_sweep");
    const auto cfg = out / "cfg.json";
    std::ofstream(cfg) << json{{"corpus", (testkit::data_dir() / "mini_corpus" / "corpus.jsonl").string()},
                               {"truth", (testkit::data_dir() / "mini_corpus" / "truth.jsonl").string()}}
                              .dump();
    const auto r = testkit::run_command(cli() + " sweep --config " + q(cfg) +
                                        " --filters none,structural --styles score,yesno --out " + q(out / "s"));
    ASSERT_EQ(r.exit_code, 0) << r.output;
    const auto reports = json::parse(testkit::read_file(out / "s" / "report.json"));
    EXPECT_EQ(reports.at("reports").size(), 4u);
    EXPECT_EQ(line_count(out / "s" / "report.csv"), 1u + 4 * 7 * 4);
}
