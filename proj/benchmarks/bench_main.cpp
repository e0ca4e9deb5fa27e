#include <benchmark/benchmark.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "solmut/experiment.hpp"
#include "solmut/lexer.hpp"
#include "solmut/operators.hpp"
#include "solmut/parser.hpp"
#include "solmut/pipeline.hpp"
#include "solmut/report.hpp"

using namespace solmut;

namespace {

const std::map<std::string, std::string>& corpus() {
    static const auto files = [] {
        std::map<std::string, std::string> out;
        for (const auto& e : std::filesystem::directory_iterator(SOLMUT_BENCH_CORPUS)) {
            std::ifstream in(e.path(), std::ios::binary);
            std::ostringstream ss;
            ss << in.rdbuf();
            out[e.path().filename().string()] = ss.str();
        }
        return out;
    }();
    return files;
}

std::int64_t corpus_bytes() {
    std::int64_t n = 0;
    for (const auto& [_, text] : corpus()) n += static_cast<std::int64_t>(text.size());
    return n;
}

void BM_Tokenize(benchmark::State& state) {
    for (auto _ : state)
        for (const auto& [_, text] : corpus()) benchmark::DoNotOptimize(tokenize(text));
    state.SetBytesProcessed(state.iterations() * corpus_bytes());
}
BENCHMARK(BM_Tokenize);

void BM_Parse(benchmark::State& state) {
    for (auto _ : state)
        for (const auto& [_, text] : corpus()) benchmark::DoNotOptimize(parse(text));
    state.SetBytesProcessed(state.iterations() * corpus_bytes());
}
BENCHMARK(BM_Parse);

void BM_EnumerateAll(benchmark::State& state) {
    std::vector<SourceUnit> units;
    for (const auto& [_, text] : corpus()) units.push_back(parse(text));
    std::size_t points = 0;
    for (auto _ : state)
        for (const auto& u : units) {
            auto pts = enumerate(u, all_operators());
            points = pts.size();
            benchmark::DoNotOptimize(pts);
        }
    state.counters["points_last_file"] = static_cast<double>(points);
}
BENCHMARK(BM_EnumerateAll);

void BM_GenerateMutants(benchmark::State& state) {
    std::size_t n = 0;
    for (auto _ : state) {
        auto set = generate_mutants(corpus(), all_operators());
        n = set.mutants.size();
        benchmark::DoNotOptimize(set);
    }
    state.counters["mutants"] = static_cast<double>(n);
}
BENCHMARK(BM_GenerateMutants);

KillMatrix synthetic_matrix(std::size_t rows, std::size_t cols) {
    std::mt19937_64 rng(1);
    KillMatrix m;
    for (std::size_t j = 0; j < cols; ++j) m.test_ids.push_back("t" + std::to_string(j));
    for (std::size_t i = 0; i < rows; ++i) {
        m.mutant_ids.push_back("ROR-" + std::to_string(i + 1) + "-00000000");
        std::vector<TestStatus> row(cols, TestStatus::pass);
        for (auto& c : row)
            if (rng() % 10 == 0) c = TestStatus::fail;
        m.cells.push_back(std::move(row));
    }
    return m;
}

void BM_Experiment(benchmark::State& state) {
    auto rows = static_cast<std::size_t>(state.range(0));
    auto m = synthetic_matrix(rows, 40);
    CoverageMatrix cov;
    for (std::size_t j = 0; j < 40; ++j) {
        cov.test_ids.push_back(m.test_ids[j]);
        cov.lines.push_back({"A.sol:" + std::to_string(j % 17), "A.sol:" + std::to_string(j % 5)});
        cov.branches.push_back({"A.sol:" + std::to_string(j % 7) + ":T"});
    }
    for (auto _ : state) benchmark::DoNotOptimize(run_experiment(m, cov, {10, 3}));
}
BENCHMARK(BM_Experiment)->Arg(200)->Arg(2000);

void BM_Wilcoxon(benchmark::State& state) {
    std::mt19937_64 rng(5);
    std::vector<double> a(static_cast<std::size_t>(state.range(0))), b(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = static_cast<double>(rng() % 50);
        b[i] = static_cast<double>(rng() % 50);
    }
    for (auto _ : state) benchmark::DoNotOptimize(wilcoxon_paired(a, b));
}
BENCHMARK(BM_Wilcoxon)->Arg(10)->Arg(40)->Arg(200);

} // namespace

BENCHMARK_MAIN();
