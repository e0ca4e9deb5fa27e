#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "solmut/pipeline.hpp"

namespace solmut {

enum class TestStatus { pass, fail, timeout, error };

const char* to_string(TestStatus status);
std::optional<TestStatus> parse_test_status(std::string_view name);

/// A cell that kills its mutant.
inline bool kills(TestStatus s) { return s == TestStatus::fail || s == TestStatus::timeout; }

struct TestResult {
    std::string test_id;
    TestStatus status = TestStatus::error;
    std::optional<std::int64_t> duration_ms; // absent on timeout
};

struct RunnerConfig {
    std::string test_command; // contains "{workspace}" exactly once
    int per_test_timeout_s = 300;
    unsigned parallel_workers = 1;
    bool prune_failing_baseline = false;
    bool early_exit = false; // stop a mutant's run at its first failing test

    /// Throws Error on a malformed template or non-positive limits.
    void validate() const;
};

/// The template with "{workspace}" replaced by the shell-quoted path.
std::string expand_test_command(const std::string& test_command, const std::filesystem::path& workspace);

/// Parses one runner output line. Returns nullopt for lines that are not
/// results; throws AdapterError for a malformed TESTRESULT line.
std::optional<std::pair<TestStatus, std::string>> parse_result_line(std::string_view line);

struct Baseline {
    std::vector<std::string> test_ids; // tests kept for mutant runs
    std::vector<TestResult> results;   // everything the original reported
    std::vector<std::string> pruned;   // failing tests removed under pruning
};

/// Runs the suite on the original project. Throws BaselineFailure when a test
/// fails and pruning is off, AdapterError on protocol violations, exit >= 2,
/// silence longer than per_test_timeout_s, or zero reported tests.
Baseline run_baseline(const std::filesystem::path& workspace, const RunnerConfig& config);

/// One result per entry of `test_ids`, in that order. Tests not reported
/// before the per-mutant budget (per_test_timeout_s x n) are timeouts;
/// tests missing from a completed run are errors.
std::vector<TestResult> run_mutant(const std::filesystem::path& workspace, const std::vector<std::string>& test_ids,
                                   const RunnerConfig& config, std::vector<std::string>* warnings = nullptr);

struct KillMatrix {
    std::vector<std::string> mutant_ids;
    std::vector<std::string> test_ids;
    std::vector<std::vector<TestStatus>> cells; // [mutant][test]
    std::vector<std::string> pruned_tests;

    [[nodiscard]] std::size_t rows() const { return mutant_ids.size(); }
    [[nodiscard]] std::size_t cols() const { return test_ids.size(); }
    [[nodiscard]] bool killed(std::size_t row) const;
    [[nodiscard]] std::size_t killed_count() const;
    /// 16-hex digest over ids and cells.
    [[nodiscard]] std::string digest() const;
};

/// Throws DimensionMismatch when a row is missing or incomplete.
KillMatrix build_kill_matrix(const std::vector<std::string>& mutant_ids, const std::vector<std::string>& test_ids,
                             const std::vector<std::vector<TestResult>>& rows);

/// pending -> killed/survived for every matrix row.
void apply_kill_statuses(MutantSet& set, const KillMatrix& matrix);

std::string matrix_json(const KillMatrix& matrix);
KillMatrix parse_matrix(std::string_view json_text);

/// JSON-lines records {mutant_id, test_id, status, duration_ms}.
std::string results_jsonl(const std::vector<std::string>& mutant_ids,
                          const std::vector<std::vector<TestResult>>& rows);

struct MutantJob {
    std::string id;
    std::filesystem::path workspace;
};

/// Runs every job on up to parallel_workers threads; rows come back in job
/// order regardless of completion order.
std::vector<std::vector<TestResult>> run_mutants(const std::vector<MutantJob>& jobs,
                                                 const std::vector<std::string>& test_ids,
                                                 const RunnerConfig& config,
                                                 std::vector<std::string>* warnings = nullptr);

} // namespace solmut
