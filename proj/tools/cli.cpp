#include "cli.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "solmut/ast_json.hpp"
#include "solmut/errors.hpp"
#include "solmut/fileio.hpp"
#include "solmut/experiment.hpp"
#include "solmut/harness.hpp"
#include "solmut/parser.hpp"
#include "solmut/pipeline.hpp"
#include "solmut/report.hpp"
#include "solmut/traverse.hpp"
#include "solmut/version.hpp"

namespace fs = std::filesystem;

namespace solmut::cli {

namespace {

std::string operator_list(const OperatorSet& ops) {
    std::string s;
    for (auto code : kAllOperators) {
        if (!ops.count(code)) continue;
        if (!s.empty()) s += ",";
        s += code_name(code);
    }
    return s;
}

/// Files under `project` (relative, '/'-separated, sorted) matching any glob.
/// '*' also matches '/'.
std::vector<std::string> expand_sources(const fs::path& project, const std::vector<std::string>& globs,
                                        const fs::path& out_dir) {
    std::vector<std::string> files;
    auto out_canon = fs::weakly_canonical(out_dir);
    for (auto it = fs::recursive_directory_iterator(project); it != fs::recursive_directory_iterator(); ++it) {
        if (it->is_directory() &&
            (it->path().filename() == ".git" || fs::weakly_canonical(it->path()) == out_canon)) {
            it.disable_recursion_pending();
            continue;
        }
        if (!it->is_regular_file()) continue;
        auto rel = fs::relative(it->path(), project).generic_string();
        for (const auto& g : globs) {
            if (fnmatch(g.c_str(), rel.c_str(), 0) == 0) {
                files.push_back(rel);
                break;
            }
        }
    }
    std::sort(files.begin(), files.end());
    return files;
}

std::set<std::string> load_marks(const ToolConfig& config) {
    if (config.marks.empty()) return {};
    auto ids = parse_marks(read_file(config.marks));
    return {ids.begin(), ids.end()};
}

/// Matrix without the rows of mutants marked equivalent.
KillMatrix drop_rows(const KillMatrix& m, const std::set<std::string>& ids) {
    if (ids.empty()) return m;
    KillMatrix out;
    out.test_ids = m.test_ids;
    out.pruned_tests = m.pruned_tests;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (ids.count(m.mutant_ids[i])) continue;
        out.mutant_ids.push_back(m.mutant_ids[i]);
        out.cells.push_back(m.cells[i]);
    }
    return out;
}

class Commands {
public:
    Commands(ToolConfig config, std::ostream& out, std::ostream& err)
        : c_(std::move(config)), out_(out), err_(err) {}

    int parse(const std::vector<std::string>& paths, bool dump_ast) {
        int status = kOk;
        for (const auto& path : paths) {
            std::string text;
            try {
                text = read_file(path);
                auto unit = solmut::parse(text);
                std::size_t functions = 0;
                for (const auto& c : unit.contracts) functions += c.functions.size();
                out_ << path << ": contracts=" << unit.contracts.size() << " functions=" << functions
                     << " nodes=" << node_count(unit) << "\n";
                if (dump_ast) out_ << serialize(unit) << "\n";
            } catch (const SourceError& e) {
                err_ << e.diagnostic(path) << "\n";
                status = kInputError;
            }
        }
        return status;
    }

    int mutate() {
        fs::path project = c_.project;
        fs::path out_dir = c_.out;
        fs::create_directories(out_dir);
        auto globs = c_.sources.empty() ? std::vector<std::string>{"*.sol"} : c_.sources;
        auto files = expand_sources(project, globs, out_dir);
        if (files.empty()) throw Error("no source files match under " + project.string());

        std::map<std::string, std::string> sources;
        for (const auto& f : files) sources[f] = read_file(project / f);
        auto set = generate_mutants(sources, c_.operators, c_.seed);

        if (!c_.marks.empty())
            for (const auto& w : load_equivalence_marks(set, c_.marks)) warn(w);
        materialize(set, project, out_dir);
        if (!c_.compile_command.empty()) {
            CompileOptions opts{c_.compile_command, std::chrono::seconds(c_.compile_timeout_s), c_.jobs};
            for (const auto& w : compile_filter(set, out_dir, opts)) warn(w);
        } else {
            accept_uncompiled(set);
        }
        write_file(out_dir / "mutants.json", catalog_json(set));

        std::map<OperatorCode, std::size_t> counts;
        std::size_t failed = 0;
        for (const auto& m : set.mutants) {
            ++counts[m.point.op];
            failed += m.status == MutantStatus::compile_failed ? 1 : 0;
        }
        for (auto code : kAllOperators)
            if (c_.operators.count(code)) out_ << std::left << std::setw(5) << code_name(code) << " " << counts[code] << "\n";
        out_ << "mutants: " << set.mutants.size() << " (duplicates removed: " << set.duplicates_removed
             << ", compile failed: " << failed << ")\n";
        return kOk;
    }

    int run() {
        fs::path out_dir = c_.out;
        RunnerConfig rc{c_.test_command, c_.per_test_timeout_s, c_.jobs, c_.prune_failing_baseline, c_.early_exit};
        if (rc.test_command.empty()) throw Error("run needs --test-command");
        rc.validate();
        auto set = parse_catalog(read_file(out_dir / "mutants.json"));

        auto baseline = run_baseline(original_dir(out_dir), rc);
        for (const auto& id : baseline.pruned) warn("pruned failing baseline test " + id);

        std::vector<MutantJob> jobs;
        std::vector<std::string> ids;
        for (const auto& m : set.mutants) {
            if (m.status != MutantStatus::pending) continue;
            jobs.push_back({m.id, mutant_dir(out_dir, m.id)});
            ids.push_back(m.id);
        }
        std::vector<std::string> warnings;
        auto rows = run_mutants(jobs, baseline.test_ids, rc, &warnings);
        for (const auto& w : warnings) warn(w);
        auto matrix = build_kill_matrix(ids, baseline.test_ids, rows);
        matrix.pruned_tests = baseline.pruned;
        apply_kill_statuses(set, matrix);

        write_file(out_dir / "results.jsonl", results_jsonl(ids, rows));
        write_file(out_dir / "matrix.json", matrix_json(matrix));
        for (const auto& m : set.mutants)
            if (m.status == MutantStatus::killed || m.status == MutantStatus::survived) write_mutant_record(m, out_dir);

        // Keep the catalog's file digests; only statuses change.
        auto doc = nlohmann::ordered_json::parse(read_file(out_dir / "mutants.json"));
        for (auto& j : doc.at("mutants"))
            if (auto m = set.find(j.at("id").get<std::string>())) j["status"] = to_string(m->status);
        write_file(out_dir / "mutants.json", doc.dump(2) + "\n");

        out_ << "tests: " << baseline.test_ids.size() << " (pruned: " << baseline.pruned.size() << ")\n";
        out_ << "mutants run: " << matrix.rows() << ", killed: " << matrix.killed_count() << "\n";
        return kOk;
    }

    int score(bool print_table) {
        fs::path out_dir = c_.out;
        auto matrix_path = out_dir / "matrix.json";
        if (!fs::exists(matrix_path)) throw Error("no kill matrix at " + matrix_path.string() + "; run `solmut run` first");
        auto matrix = parse_matrix(read_file(matrix_path));
        auto marks = load_marks(c_);

        std::vector<MutantSummary> summaries;
        OperatorSet enabled;
        std::uint64_t seed = c_.seed;
        auto catalog_path = out_dir / "mutants.json";
        if (fs::exists(catalog_path)) {
            auto set = parse_catalog(read_file(catalog_path));
            summaries = summarize(set);
            enabled = set.enabled_operators;
            seed = set.seed;
        } else {
            summaries = summarize(matrix);
            enabled = c_.operators;
        }
        auto scored = drop_rows(matrix, marks);
        (void)mutation_score(scored); // UndefinedScore when nothing is left to score
        auto report = build_report(operator_stats(summaries, matrix, enabled, marks), seed, matrix.digest());
        emit_report(report, out_dir);
        if (print_table) out_ << report_markdown(report);
        auto killed = scored.killed_count();
        out_ << "mutation score: " << format_score(killed, scored.rows() - killed) << "\n";
        return kOk;
    }

    int experiment() {
        fs::path out_dir = c_.out;
        if (c_.coverage.empty()) throw Error("experiment needs --coverage");
        auto matrix_path = out_dir / "matrix.json";
        if (!fs::exists(matrix_path)) throw Error("no kill matrix at " + matrix_path.string());
        auto matrix = drop_rows(parse_matrix(read_file(matrix_path)), load_marks(c_));
        auto coverage = CoverageMatrix::parse(read_file(c_.coverage));
        auto result = run_experiment(matrix, coverage, ExperimentConfig{c_.runs, c_.seed});
        write_file(out_dir / "experiment.json", result.to_json());

        auto pct = [](double v) {
            std::ostringstream s;
            s << std::fixed << std::setprecision(2) << v;
            return s.str();
        };
        out_ << "runs: " << c_.runs << "\n";
        out_ << "MS2(TS) " << pct(result.avg_ms2_ts) << "  MS2(TS_Cov) " << pct(result.avg_ms2_cov)
             << "  MS2(TS_MS1) " << pct(result.avg_ms2_ms1) << "\n";
        auto rate = [&](const std::optional<double>& r) { return r ? pct(100.0 * *r) + "%" : std::string("undefined"); };
        out_ << "detection rate TS_Cov: " << rate(result.detection_rate_cov) << "\n";
        out_ << "detection rate TS_MS1: " << rate(result.detection_rate_ms1) << "\n";
        out_ << "wilcoxon p: "
             << (result.wilcoxon_p ? std::to_string(*result.wilcoxon_p) : "n/a (" + result.wilcoxon_note + ")") << "\n";
        return kOk;
    }

private:
    void warn(const std::string& w) { err_ << "warning: " << w << "\n"; }

    ToolConfig c_;
    std::ostream& out_;
    std::ostream& err_;
};

} // namespace

void apply_config_json(std::string_view json_text, ToolConfig& c) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed config: ") + e.what());
    }
    if (!doc.is_object()) throw Error("config must be a JSON object");
    try {
        for (auto& [key, v] : doc.items()) {
            if (key == "project") c.project = v.get<std::string>();
            else if (key == "sources") c.sources = v.is_string() ? std::vector<std::string>{v.get<std::string>()}
                                                                : v.get<std::vector<std::string>>();
            else if (key == "operators") {
                std::string list;
                if (v.is_string()) list = v.get<std::string>();
                else
                    for (const auto& x : v) list += x.get<std::string>() + ",";
                c.operators = parse_operator_list(list);
            } else if (key == "seed") c.seed = v.get<std::uint64_t>();
            else if (key == "compile_command") c.compile_command = v.get<std::string>();
            else if (key == "compile_timeout_s") c.compile_timeout_s = v.get<int>();
            else if (key == "test_command") c.test_command = v.get<std::string>();
            else if (key == "per_test_timeout_s") c.per_test_timeout_s = v.get<int>();
            else if (key == "jobs" || key == "parallel_workers") c.jobs = v.get<unsigned>();
            else if (key == "prune_failing_baseline") c.prune_failing_baseline = v.get<bool>();
            else if (key == "early_exit") c.early_exit = v.get<bool>();
            else if (key == "out" || key == "output_dir") c.out = v.get<std::string>();
            else if (key == "marks") c.marks = v.get<std::string>();
            else if (key == "coverage") c.coverage = v.get<std::string>();
            else if (key == "runs") c.runs = v.get<int>();
            else throw Error("unknown config key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("bad config value: ") + e.what());
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"solmut " + std::string(kToolVersion) + ": mutation testing for Solidity contracts", "solmut"};
    app.require_subcommand(1);

    ToolConfig flags;
    flags.jobs = std::max(1u, std::thread::hardware_concurrency());
    std::string config_path, operators, seed_text;
    app.add_option("--config", config_path, "JSON config file; flags override its keys");
    app.add_option("--seed", flags.seed, "Seed for GVC values and the experiment");
    app.add_option("--operators", operators, "Comma-separated operator codes (default: all 25)");
    app.add_option("--out,--output_dir", flags.out, "Output directory");
    app.add_option("--jobs,--parallel_workers", flags.jobs, "Concurrent compile/test processes")->check(CLI::PositiveNumber);
    app.add_option("--project", flags.project, "Project directory copied into each workspace");
    app.add_option("--sources", flags.sources, "Source globs relative to the project");
    app.add_option("--compile-command,--compile_command", flags.compile_command, "Compile adapter command");
    app.add_option("--compile-timeout-s,--compile_timeout_s", flags.compile_timeout_s)->check(CLI::PositiveNumber);
    app.add_option("--test-command,--test_command", flags.test_command, "Runner command with {workspace}");
    app.add_option("--per-test-timeout-s,--per_test_timeout_s", flags.per_test_timeout_s)->check(CLI::PositiveNumber);
    app.add_flag("--prune-failing-baseline,--prune_failing_baseline", flags.prune_failing_baseline);
    app.add_flag("--early-exit,--early_exit", flags.early_exit, "Stop a mutant's run at its first failing test");
    app.add_option("--marks", flags.marks, "Equivalence marks file");
    app.add_option("--coverage", flags.coverage, "Coverage JSON file");
    app.add_option("--runs", flags.runs, "Experiment repetitions")->check(CLI::PositiveNumber);

    std::vector<std::string> parse_paths;
    bool dump_ast = false;
    auto* parse_cmd = app.add_subcommand("parse", "Parse files and print counts");
    parse_cmd->add_option("paths", parse_paths)->required();
    parse_cmd->add_flag("--ast", dump_ast, "Also print the serialized tree");
    auto* mutate_cmd = app.add_subcommand("mutate", "Generate, materialize and compile-filter mutants");
    auto* run_cmd = app.add_subcommand("run", "Run the test suite on the original and every pending mutant");
    auto* score_cmd = app.add_subcommand("score", "Compute the mutation score and write reports");
    auto* report_cmd = app.add_subcommand("report", "Write reports and print the per-operator table");
    auto* experiment_cmd = app.add_subcommand("experiment", "Coverage vs mutation adequacy experiment");
    for (auto* sub : {parse_cmd, mutate_cmd, run_cmd, score_cmd, report_cmd, experiment_cmd}) sub->fallthrough();

    std::vector<std::string> reversed(args.size() > 1 ? args.rbegin() : args.rend(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        ToolConfig config;
        config.jobs = flags.jobs;
        if (!config_path.empty()) apply_config_json(read_file(config_path), config);
        auto given = [&](const char* name) { return app.count(name) > 0; };
        if (given("--seed")) config.seed = flags.seed;
        if (given("--operators")) config.operators = parse_operator_list(operators);
        if (given("--out")) config.out = flags.out;
        if (given("--jobs")) config.jobs = flags.jobs;
        if (given("--project")) config.project = flags.project;
        if (given("--sources")) config.sources = flags.sources;
        if (given("--compile-command")) config.compile_command = flags.compile_command;
        if (given("--compile-timeout-s")) config.compile_timeout_s = flags.compile_timeout_s;
        if (given("--test-command")) config.test_command = flags.test_command;
        if (given("--per-test-timeout-s")) config.per_test_timeout_s = flags.per_test_timeout_s;
        if (given("--prune-failing-baseline")) config.prune_failing_baseline = flags.prune_failing_baseline;
        if (given("--early-exit")) config.early_exit = flags.early_exit;
        if (given("--marks")) config.marks = flags.marks;
        if (given("--coverage")) config.coverage = flags.coverage;
        if (given("--runs")) config.runs = flags.runs;

        Commands commands(config, out, err);
        if (*parse_cmd) return commands.parse(parse_paths, dump_ast);
        if (*mutate_cmd) return commands.mutate();
        if (*run_cmd) return commands.run();
        if (*score_cmd) return commands.score(false);
        if (*report_cmd) return commands.score(true);
        if (*experiment_cmd) return commands.experiment();
    } catch (const BaselineFailure& e) {
        err << "error: " << e.what() << "\n";
        return kBaselineFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}

} // namespace solmut::cli
