#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "solmut/harness.hpp"

namespace solmut {

struct CoverageMatrix {
    std::vector<std::string> test_ids;
    std::vector<std::set<std::string>> lines;    // per test
    std::vector<std::set<std::string>> branches; // per test

    /// {"tests": [{"id", "lines": [...], "branches": [...]}]}
    static CoverageMatrix parse(std::string_view json_text);
};

struct MutantSplit {
    std::vector<std::size_t> m1; // row indices, ascending
    std::vector<std::size_t> m2;
};

/// Uniform partition of n mutants with |M1| = floor(n/2). Throws
/// ExperimentInfeasible for n < 2.
MutantSplit split_mutants(std::size_t n, std::uint64_t seed);

/// Randomized greedy subset (test indices, selection order) whose line and
/// branch coverage union equals the whole suite's.
std::vector<std::size_t> select_ts_cov(const CoverageMatrix& coverage, std::uint64_t seed);

/// Randomized greedy subset killing exactly as many of `m1` as the whole
/// suite does.
std::vector<std::size_t> select_ts_ms1(const KillMatrix& matrix, const std::vector<std::size_t>& m1,
                                       std::uint64_t seed);

/// Rows of `rows` killed by at least one test in `tests`.
std::size_t killed_by(const KillMatrix& matrix, const std::vector<std::size_t>& rows,
                      const std::vector<std::size_t>& tests);

/// 100 * killed_by / |rows|; 0 for empty `rows`.
double score_on(const KillMatrix& matrix, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& tests);

struct ExperimentConfig {
    int runs = 10;
    std::uint64_t seed = 0;
};

struct RunRecord {
    std::uint64_t seed = 0;
    std::vector<std::string> m1, m2, ts_cov, ts_ms1;
    double ms1_ts = 0, ms1_cov = 0, ms1_ms1 = 0;
    double ms2_ts = 0, ms2_cov = 0, ms2_ms1 = 0;
};

struct ExperimentResult {
    std::vector<RunRecord> runs;
    double avg_ms2_ts = 0, avg_ms2_cov = 0, avg_ms2_ms1 = 0;
    double avg_size_cov = 0, avg_size_ms1 = 0;
    std::optional<double> detection_rate_cov; // absent when mean MS2(TS) == 0
    std::optional<double> detection_rate_ms1;
    std::optional<double> wilcoxon_p;         // MS2(TS_MS1) vs MS2(TS_Cov) over runs
    std::string wilcoxon_note;                // why wilcoxon_p is absent

    [[nodiscard]] std::string to_json() const;
};

/// Coverage test ids are matched to matrix columns by id; every matrix test
/// needs coverage.
ExperimentResult run_experiment(const KillMatrix& matrix, const CoverageMatrix& coverage,
                                const ExperimentConfig& config);

/// Two-tailed paired Wilcoxon signed-rank p-value. Zero differences are
/// dropped; throws InsufficientPairs when fewer than 5 remain. Exact null
/// distribution up to 20 pairs, normal approximation (tie and continuity
/// corrected) above.
double wilcoxon_paired(const std::vector<double>& a, const std::vector<double>& b);

} // namespace solmut
