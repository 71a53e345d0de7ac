#include <benchmark/benchmark.h>

#include <filesystem>

#include "algorec/code_model/corpus.hpp"
#include "algorec/code_model/lexer.hpp"
#include "algorec/code_model/parser.hpp"
#include "algorec/keyword/keyword_filter.hpp"
#include "algorec/obfuscate/obfuscator.hpp"
#include "algorec/structural/embed.hpp"
#include "algorec/structural/pattern.hpp"

namespace {

const std::filesystem::path kData = ALGOREC_BENCH_DATA_DIR;

const algorec::code_model::Corpus& corpus() {
    static const auto c = algorec::code_model::load_corpus(kData / "mini_corpus" / "corpus.jsonl").records;
    return c;
}

std::size_t corpus_bytes() {
    std::size_t n = 0;
    for (const auto& r : corpus()) {
        n += r.source.size();
    }
    return n;
}

void BM_Tokenize(benchmark::State& state) {
    for (auto _ : state) {
        for (const auto& r : corpus()) {
            benchmark::DoNotOptimize(algorec::code_model::tokenize(r.source));
        }
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * corpus_bytes()));
}
BENCHMARK(BM_Tokenize);

void BM_Parse(benchmark::State& state) {
    for (auto _ : state) {
        for (const auto& r : corpus()) {
            benchmark::DoNotOptimize(algorec::code_model::parse_method_tokens(r.tokens, r.name));
        }
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * corpus().size()));
}
BENCHMARK(BM_Parse);

void BM_StructuralFilter(benchmark::State& state) {
    const auto patterns = algorec::structural::load_patterns(kData / "patterns" / "structural" / "prominent_feature");
    for (auto _ : state) {
        for (const auto& p : patterns) {
            benchmark::DoNotOptimize(algorec::structural::filter_corpus(p, corpus()));
        }
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * corpus().size() * patterns.size()));
}
BENCHMARK(BM_StructuralFilter);

void BM_KeywordFilter(benchmark::State& state) {
    const auto patterns = algorec::keyword::load_patterns(kData / "patterns" / "keyword" / "recall_focused");
    for (auto _ : state) {
        for (const auto& p : patterns) {
            benchmark::DoNotOptimize(algorec::keyword::filter_corpus(p, corpus()));
        }
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * corpus().size() * patterns.size()));
}
BENCHMARK(BM_KeywordFilter);

void BM_Obfuscate(benchmark::State& state) {
    for (auto _ : state) {
        for (const auto& r : corpus()) {
            benchmark::DoNotOptimize(algorec::obfuscate::obfuscate(r, 1));
        }
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * corpus().size()));
}
BENCHMARK(BM_Obfuscate);

}  // namespace

BENCHMARK_MAIN();
