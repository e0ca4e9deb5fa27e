#include "solmut/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <thread>

#include "json.hpp"

#include "solmut/digest.hpp"
#include "solmut/errors.hpp"
#include "solmut/process.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace solmut {

namespace {

using Clock = std::chrono::steady_clock;
constexpr std::string_view kPlaceholder = "{workspace}";
constexpr std::string_view kPrefix = "TESTRESULT";

struct Run {
    std::map<std::string, TestResult> by_id;
    std::vector<std::string> order; // first-report order
    ProcessResult process;
};

Run run_suite(const fs::path& workspace, const RunnerConfig& config, std::chrono::milliseconds deadline,
              std::chrono::milliseconds inactivity, bool stop_on_fail) {
    Run run;
    ProcessOptions p;
    p.argv = {"/bin/sh", "-c", expand_test_command(config.test_command, fs::absolute(workspace))};
    p.cwd = workspace;
    p.deadline = deadline;
    p.inactivity = inactivity;
    auto last = Clock::now();
    p.on_line = [&](std::string_view line) {
        auto parsed = parse_result_line(line);
        if (!parsed) return true;
        auto& [status, id] = *parsed;
        auto now = Clock::now();
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now - last).count();
        last = now;
        if (run.by_id.count(id)) return true;
        run.by_id[id] = TestResult{id, status, ms};
        run.order.push_back(id);
        return !(stop_on_fail && status == TestStatus::fail);
    };
    run.process = run_process(p);
    return run;
}

} // namespace

const char* to_string(TestStatus status) {
    switch (status) {
    case TestStatus::pass: return "pass";
    case TestStatus::fail: return "fail";
    case TestStatus::timeout: return "timeout";
    case TestStatus::error: return "error";
    }
    return "?";
}

std::optional<TestStatus> parse_test_status(std::string_view name) {
    for (auto s : {TestStatus::pass, TestStatus::fail, TestStatus::timeout, TestStatus::error})
        if (name == to_string(s)) return s;
    return std::nullopt;
}

void RunnerConfig::validate() const {
    auto first = test_command.find(kPlaceholder);
    if (first == std::string::npos || test_command.find(kPlaceholder, first + 1) != std::string::npos)
        throw Error("test command must contain {workspace} exactly once: " + test_command);
    if (per_test_timeout_s <= 0) throw Error("per_test_timeout_s must be positive");
    if (parallel_workers == 0) throw Error("parallel_workers must be positive");
}

std::string expand_test_command(const std::string& test_command, const fs::path& workspace) {
    std::string out = test_command;
    auto pos = out.find(kPlaceholder);
    if (pos != std::string::npos) out.replace(pos, kPlaceholder.size(), shell_quote(workspace.string()));
    return out;
}

std::optional<std::pair<TestStatus, std::string>> parse_result_line(std::string_view line) {
    if (!line.starts_with(kPrefix)) return std::nullopt;
    auto rest = line.substr(kPrefix.size());
    if (!rest.empty() && rest.front() != ' ' && rest.front() != '\t') return std::nullopt;
    auto skip = [](std::string_view& s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    };
    skip(rest);
    auto sp = rest.find_first_of(" \t");
    auto word = rest.substr(0, sp);
    std::string_view id = sp == std::string_view::npos ? std::string_view() : rest.substr(sp);
    skip(id);
    while (!id.empty() && (id.back() == ' ' || id.back() == '\t')) id.remove_suffix(1);
    if ((word != "pass" && word != "fail") || id.empty())
        throw AdapterError("malformed runner line: " + std::string(line));
    return std::make_pair(word == "pass" ? TestStatus::pass : TestStatus::fail, std::string(id));
}

Baseline run_baseline(const fs::path& workspace, const RunnerConfig& config) {
    config.validate();
    auto run = run_suite(workspace, config, std::chrono::milliseconds(0),
                         std::chrono::seconds(config.per_test_timeout_s), false);
    if (run.process.timed_out)
        throw AdapterError("baseline run produced no result for " + std::to_string(config.per_test_timeout_s) + " s");
    if (run.process.exit_code < 0 || run.process.exit_code >= 2)
        throw AdapterError("test runner exited with status " + std::to_string(run.process.exit_code) +
                           " on the original project");
    if (run.order.empty()) throw AdapterError("test runner reported no tests on the original project");

    Baseline b;
    std::vector<std::string> failing;
    for (const auto& id : run.order) {
        const auto& r = run.by_id.at(id);
        b.results.push_back(r);
        if (r.status == TestStatus::pass) b.test_ids.push_back(id);
        else failing.push_back(id);
    }
    if (!failing.empty()) {
        if (!config.prune_failing_baseline) throw BaselineFailure(failing);
        b.pruned = failing;
    }
    if (b.test_ids.empty()) throw BaselineFailure(failing);
    return b;
}

std::vector<TestResult> run_mutant(const fs::path& workspace, const std::vector<std::string>& test_ids,
                                   const RunnerConfig& config, std::vector<std::string>* warnings) {
    auto budget = std::chrono::seconds(static_cast<std::int64_t>(config.per_test_timeout_s) *
                                       static_cast<std::int64_t>(test_ids.size()));
    auto run = run_suite(workspace, config, budget, std::chrono::milliseconds(0), config.early_exit);
    bool crashed = !run.process.timed_out && !run.process.stopped &&
                   (run.process.exit_code < 0 || run.process.exit_code >= 2);
    if (crashed && warnings)
        warnings->push_back("test runner exited with status " + std::to_string(run.process.exit_code) + " in " +
                            workspace.string());
    std::vector<TestResult> out;
    out.reserve(test_ids.size());
    for (const auto& id : test_ids) {
        auto it = run.by_id.find(id);
        if (it != run.by_id.end()) out.push_back(it->second);
        else if (run.process.timed_out) out.push_back(TestResult{id, TestStatus::timeout, std::nullopt});
        else out.push_back(TestResult{id, TestStatus::error, std::int64_t{0}});
    }
    return out;
}

bool KillMatrix::killed(std::size_t row) const {
    return std::any_of(cells[row].begin(), cells[row].end(), kills);
}

std::size_t KillMatrix::killed_count() const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < rows(); ++i) n += killed(i) ? 1 : 0;
    return n;
}

std::string KillMatrix::digest() const {
    std::uint64_t h = fnv1a64("");
    auto mix = [&](std::string_view s) {
        h = fnv1a64(s, h);
        h = fnv1a64(std::string_view("\0", 1), h);
    };
    for (const auto& id : mutant_ids) mix(id);
    mix("|");
    for (const auto& id : test_ids) mix(id);
    mix("|");
    for (const auto& row : cells)
        for (auto c : row) mix(to_string(c));
    return hex64(h);
}

KillMatrix build_kill_matrix(const std::vector<std::string>& mutant_ids, const std::vector<std::string>& test_ids,
                             const std::vector<std::vector<TestResult>>& rows) {
    if (rows.size() != mutant_ids.size())
        throw DimensionMismatch("expected " + std::to_string(mutant_ids.size()) + " result rows, got " +
                                std::to_string(rows.size()));
    KillMatrix m;
    m.mutant_ids = mutant_ids;
    m.test_ids = test_ids;
    m.cells.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != test_ids.size())
            throw DimensionMismatch("mutant " + mutant_ids[i] + ": " + std::to_string(rows[i].size()) + " of " +
                                    std::to_string(test_ids.size()) + " results");
        std::vector<TestStatus> row;
        for (std::size_t j = 0; j < test_ids.size(); ++j) {
            if (rows[i][j].test_id != test_ids[j])
                throw DimensionMismatch("mutant " + mutant_ids[i] + ": result for '" + rows[i][j].test_id +
                                        "' where '" + test_ids[j] + "' was expected");
            row.push_back(rows[i][j].status);
        }
        m.cells.push_back(std::move(row));
    }
    return m;
}

void apply_kill_statuses(MutantSet& set, const KillMatrix& matrix) {
    for (std::size_t i = 0; i < matrix.rows(); ++i) {
        Mutant* m = set.find(matrix.mutant_ids[i]);
        if (!m) throw DimensionMismatch("matrix row for unknown mutant " + matrix.mutant_ids[i]);
        m->advance(matrix.killed(i) ? MutantStatus::killed : MutantStatus::survived);
    }
}

std::string matrix_json(const KillMatrix& matrix) {
    ordered_json cells = ordered_json::array();
    for (const auto& row : matrix.cells) {
        ordered_json r = ordered_json::array();
        for (auto c : row) r.push_back(to_string(c));
        cells.push_back(std::move(r));
    }
    ordered_json doc{
        {"mutant_ids", matrix.mutant_ids},
        {"test_ids", matrix.test_ids},
        {"pruned_tests", matrix.pruned_tests},
        {"cells", cells},
    };
    return doc.dump(1) + "\n";
}

KillMatrix parse_matrix(std::string_view json_text) {
    KillMatrix m;
    try {
        auto doc = ordered_json::parse(json_text);
        m.mutant_ids = doc.at("mutant_ids").get<std::vector<std::string>>();
        m.test_ids = doc.at("test_ids").get<std::vector<std::string>>();
        m.pruned_tests = doc.value("pruned_tests", std::vector<std::string>{});
        for (const auto& r : doc.at("cells")) {
            std::vector<TestStatus> row;
            for (const auto& c : r) {
                auto s = parse_test_status(c.get<std::string>());
                if (!s) throw Error("matrix: unknown cell status " + c.get<std::string>());
                row.push_back(*s);
            }
            if (row.size() != m.test_ids.size()) throw DimensionMismatch("matrix: ragged row");
            m.cells.push_back(std::move(row));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed matrix: ") + e.what());
    }
    if (m.cells.size() != m.mutant_ids.size()) throw DimensionMismatch("matrix: row count differs from mutant_ids");
    return m;
}

std::string results_jsonl(const std::vector<std::string>& mutant_ids,
                          const std::vector<std::vector<TestResult>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (const auto& r : rows[i]) {
            ordered_json rec{{"mutant_id", mutant_ids[i]},
                             {"test_id", r.test_id},
                             {"status", to_string(r.status)},
                             {"duration_ms", r.duration_ms ? ordered_json(*r.duration_ms) : ordered_json()}};
            out += rec.dump() + "\n";
        }
    }
    return out;
}

std::vector<std::vector<TestResult>> run_mutants(const std::vector<MutantJob>& jobs,
                                                 const std::vector<std::string>& test_ids,
                                                 const RunnerConfig& config, std::vector<std::string>* warnings) {
    config.validate();
    std::vector<std::vector<TestResult>> rows(jobs.size());
    std::vector<std::vector<std::string>> job_warnings(jobs.size());
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    auto worker = [&] {
        for (std::size_t i; (i = next++) < jobs.size();) {
            try {
                rows[i] = run_mutant(jobs[i].workspace, test_ids, config, &job_warnings[i]);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next = jobs.size();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        auto n = std::max<std::size_t>(1, std::min<std::size_t>(config.parallel_workers, jobs.size()));
        for (std::size_t k = 0; k < n; ++k) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);
    if (warnings)
        for (std::size_t i = 0; i < jobs.size(); ++i)
            for (auto& w : job_warnings[i]) warnings->push_back(jobs[i].id + ": " + w);
    return rows;
}

} // namespace solmut
