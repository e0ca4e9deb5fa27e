#include "solmut/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <unordered_set>

#include "json.hpp"

#include "solmut/digest.hpp"
#include "solmut/errors.hpp"
#include "solmut/fileio.hpp"
#include "solmut/parser.hpp"
#include "solmut/process.hpp"
#include "solmut/version.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace solmut {

namespace {

ordered_json span_json(const Span& s) {
    return ordered_json{{"start_byte", s.start_byte}, {"end_byte", s.end_byte}, {"line", s.start_line},
                        {"col", s.start_col}};
}

Span span_from_json(const ordered_json& j) {
    return Span{j.at("start_byte").get<std::uint32_t>(), j.at("end_byte").get<std::uint32_t>(),
                j.at("line").get<std::uint32_t>(), j.at("col").get<std::uint32_t>()};
}

ordered_json mutant_json(const Mutant& m) {
    return ordered_json{
        {"id", m.id},
        {"operator", code_name(m.point.op)},
        {"file", m.source_path},
        {"span", span_json(m.point.target_span)},
        {"original", m.point.original_text},
        {"replacement", m.point.replacement_text},
        {"status", to_string(m.status)},
        {"node_path", m.point.node_path},
        {"description", m.point.description},
    };
}

} // namespace

const char* to_string(MutantStatus status) {
    switch (status) {
    case MutantStatus::generated: return "generated";
    case MutantStatus::compile_failed: return "compile_failed";
    case MutantStatus::equivalent_marked: return "equivalent_marked";
    case MutantStatus::pending: return "pending";
    case MutantStatus::killed: return "killed";
    case MutantStatus::survived: return "survived";
    }
    return "?";
}

std::optional<MutantStatus> parse_mutant_status(std::string_view name) {
    for (auto s : {MutantStatus::generated, MutantStatus::compile_failed, MutantStatus::equivalent_marked,
                   MutantStatus::pending, MutantStatus::killed, MutantStatus::survived})
        if (name == to_string(s)) return s;
    return std::nullopt;
}

bool can_transition(MutantStatus from, MutantStatus to) {
    switch (from) {
    case MutantStatus::generated:
        return to == MutantStatus::compile_failed || to == MutantStatus::equivalent_marked ||
               to == MutantStatus::pending;
    case MutantStatus::pending:
        return to == MutantStatus::killed || to == MutantStatus::survived;
    default:
        return false;
    }
}

void Mutant::advance(MutantStatus next) {
    if (!can_transition(status, next))
        throw std::logic_error("mutant " + id + ": illegal status change " + to_string(status) + " -> " +
                               to_string(next));
    status = next;
}

Mutant* MutantSet::find(std::string_view id) {
    for (auto& m : mutants)
        if (m.id == id) return &m;
    return nullptr;
}

const Mutant* MutantSet::find(std::string_view id) const {
    return const_cast<MutantSet*>(this)->find(id);
}

std::string apply_edit(std::string_view source, const MutationPoint& point) {
    const auto& s = point.target_span;
    if (s.end_byte > source.size() || s.start_byte > s.end_byte ||
        source.substr(s.start_byte, s.size()) != point.original_text)
        throw SpanMismatch("span " + std::to_string(s.start_byte) + ".." + std::to_string(s.end_byte) +
                           " no longer holds '" + point.original_text + "'");
    std::string out;
    out.reserve(source.size() - s.size() + point.replacement_text.size());
    out.append(source.substr(0, s.start_byte));
    out.append(point.replacement_text);
    out.append(source.substr(s.end_byte));
    return out;
}

std::string mutant_digest(std::string_view path, std::string_view mutated_source) {
    std::string key(path);
    key.push_back('\0');
    key.append(mutated_source);
    return hex32(fnv1a32(key));
}

MutantSet generate_mutants(const std::map<std::string, std::string>& sources, const OperatorSet& ops,
                           std::uint64_t seed) {
    MutantSet set;
    set.original_sources = sources;
    set.seed = seed;
    set.enabled_operators = ops;

    struct Candidate {
        const std::string* path;
        MutationPoint point;
    };
    std::vector<Candidate> candidates;
    for (const auto& [path, text] : sources) {
        SourceUnit unit;
        try {
            unit = parse(text);
        } catch (const SourceError& e) {
            throw Error(e.diagnostic(path));
        }
        for (auto& p : enumerate(unit, ops, seed)) candidates.push_back({&path, std::move(p)});
    }

    // First occurrence wins: by file, then position, then operator name.
    std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        return std::make_tuple(std::string_view(*a.path), a.point.target_span.start_byte, code_name(a.point.op),
                               a.point.target_span.end_byte, std::string_view(a.point.replacement_text)) <
               std::make_tuple(std::string_view(*b.path), b.point.target_span.start_byte, code_name(b.point.op),
                               b.point.target_span.end_byte, std::string_view(b.point.replacement_text));
    });

    std::unordered_set<std::string> seen;
    std::vector<Mutant> kept;
    for (auto& c : candidates) {
        std::string text = apply_edit(sources.at(*c.path), c.point);
        std::string key = *c.path + '\0' + text;
        if (!seen.insert(std::move(key)).second) {
            ++set.duplicates_removed;
            continue;
        }
        Mutant m;
        m.point = std::move(c.point);
        m.source_path = *c.path;
        m.mutated_source = std::move(text);
        kept.push_back(std::move(m));
    }

    std::stable_sort(kept.begin(), kept.end(), [](const Mutant& a, const Mutant& b) {
        return std::make_tuple(a.point.op, std::string_view(a.source_path), a.point.target_span.start_byte,
                               a.point.target_span.end_byte, std::string_view(a.point.replacement_text)) <
               std::make_tuple(b.point.op, std::string_view(b.source_path), b.point.target_span.start_byte,
                               b.point.target_span.end_byte, std::string_view(b.point.replacement_text));
    });
    std::map<OperatorCode, int> ordinal;
    for (auto& m : kept) {
        m.id = std::string(code_name(m.point.op)) + "-" + std::to_string(++ordinal[m.point.op]) + "-" +
               mutant_digest(m.source_path, m.mutated_source);
    }
    set.mutants = std::move(kept);
    return set;
}

std::vector<std::string> parse_marks(std::string_view text) {
    std::vector<std::string> ids;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        auto e = line.find_last_not_of(" \t\r");
        ids.push_back(line.substr(b, e - b + 1));
    }
    return ids;
}

std::vector<std::string> load_equivalence_marks(MutantSet& set, const fs::path& marks_file) {
    std::vector<std::string> warnings;
    for (const auto& id : parse_marks(read_file(marks_file))) {
        Mutant* m = set.find(id);
        if (!m) {
            warnings.push_back("equivalence mark for unknown mutant " + id);
        } else if (m->status == MutantStatus::equivalent_marked) {
            continue;
        } else if (!can_transition(m->status, MutantStatus::equivalent_marked)) {
            warnings.push_back("mutant " + id + " is " + to_string(m->status) + "; mark ignored");
        } else {
            m->advance(MutantStatus::equivalent_marked);
        }
    }
    return warnings;
}

void copy_project(const fs::path& project, const fs::path& dest, const fs::path& exclude) {
    std::error_code ec;
    fs::remove_all(dest, ec);
    fs::create_directories(dest);
    auto excluded = exclude.empty() ? fs::path() : fs::weakly_canonical(exclude);
    auto dest_canon = fs::weakly_canonical(dest);
    for (auto it = fs::recursive_directory_iterator(project); it != fs::recursive_directory_iterator(); ++it) {
        const auto& entry = *it;
        auto canon = fs::weakly_canonical(entry.path());
        if (entry.path().filename() == ".git" || canon == dest_canon || (!excluded.empty() && canon == excluded)) {
            if (entry.is_directory()) it.disable_recursion_pending();
            continue;
        }
        auto rel = fs::relative(entry.path(), project);
        auto target = dest / rel;
        if (entry.is_directory()) {
            fs::create_directories(target);
        } else if (entry.is_regular_file()) {
            fs::create_directories(target.parent_path());
            fs::copy_file(entry.path(), target, fs::copy_options::overwrite_existing);
            fs::permissions(target, fs::status(entry.path()).permissions());
        }
    }
}

fs::path mutant_dir(const fs::path& out_dir, std::string_view id) { return out_dir / "mutants" / std::string(id); }
fs::path original_dir(const fs::path& out_dir) { return out_dir / "original"; }

void write_mutant_record(const Mutant& mutant, const fs::path& out_dir) {
    write_file(mutant_dir(out_dir, mutant.id) / "mutant.json", mutant_json(mutant).dump(2) + "\n");
}

void materialize(const MutantSet& set, const fs::path& project, const fs::path& out_dir) {
    copy_project(project, original_dir(out_dir), out_dir);
    std::error_code ec;
    fs::remove_all(out_dir / "mutants", ec);
    for (const auto& m : set.mutants) {
        auto dir = mutant_dir(out_dir, m.id);
        fs::create_directories(dir.parent_path());
        fs::copy(original_dir(out_dir), dir, fs::copy_options::recursive);
        write_file(dir / m.source_path, m.mutated_source);
        write_mutant_record(m, out_dir);
    }
}

CompileOutcome compile_workspace(const fs::path& workspace, const CompileOptions& options) {
    ProcessOptions p;
    p.argv = shell_argv(options.command, workspace.string());
    p.deadline = options.timeout;
    ProcessResult r = run_process(p);
    if (r.timed_out) return CompileOutcome::timed_out;
    if (r.exit_code == 0) return CompileOutcome::ok;
    if (r.exit_code == 1) return CompileOutcome::failed;
    std::string detail = r.stderr_text.substr(0, 500);
    throw AdapterError("compile adapter exited with status " + std::to_string(r.exit_code) + " on " +
                       workspace.string() + (detail.empty() ? "" : ": " + detail));
}

std::vector<std::string> compile_filter(MutantSet& set, const fs::path& out_dir, const CompileOptions& options) {
    std::vector<std::string> warnings;
    auto original = compile_workspace(original_dir(out_dir), options);
    if (original != CompileOutcome::ok)
        throw AdapterError(std::string("original project does not compile") +
                           (original == CompileOutcome::timed_out ? " (timeout)" : ""));

    std::vector<Mutant*> todo;
    for (auto& m : set.mutants)
        if (m.status == MutantStatus::generated) todo.push_back(&m);

    std::vector<CompileOutcome> outcomes(todo.size());
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    auto worker = [&] {
        for (std::size_t i; (i = next++) < todo.size();) {
            try {
                outcomes[i] = compile_workspace(mutant_dir(out_dir, todo[i]->id), options);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next = todo.size();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        unsigned n = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(todo.size())));
        for (unsigned k = 0; k < n; ++k) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);

    for (std::size_t i = 0; i < todo.size(); ++i) {
        Mutant& m = *todo[i];
        if (outcomes[i] == CompileOutcome::ok) {
            m.advance(MutantStatus::pending);
        } else {
            if (outcomes[i] == CompileOutcome::timed_out)
                warnings.push_back("compile of " + m.id + " timed out after " +
                                   std::to_string(options.timeout.count()) + " s; counted as compile_failed");
            m.advance(MutantStatus::compile_failed);
        }
        write_mutant_record(m, out_dir);
    }
    return warnings;
}

void accept_uncompiled(MutantSet& set) {
    for (auto& m : set.mutants)
        if (m.status == MutantStatus::generated) m.advance(MutantStatus::pending);
}

std::string catalog_json(const MutantSet& set) {
    ordered_json ops = ordered_json::array();
    for (auto code : kAllOperators)
        if (set.enabled_operators.count(code)) ops.push_back(code_name(code));
    ordered_json files = ordered_json::object();
    for (const auto& [path, text] : set.original_sources) files[path] = hex64(fnv1a64(text));
    ordered_json mutants = ordered_json::array();
    for (const auto& m : set.mutants) mutants.push_back(mutant_json(m));
    ordered_json doc{
        {"tool_version", kToolVersion},
        {"seed", set.seed},
        {"operators", ops},
        {"files", files},
        {"duplicates_removed", set.duplicates_removed},
        {"mutants", mutants},
    };
    return doc.dump(2) + "\n";
}

MutantSet parse_catalog(std::string_view json_text) {
    MutantSet set;
    try {
        auto doc = ordered_json::parse(json_text);
        set.seed = doc.value("seed", std::uint64_t{0});
        for (const auto& code : doc.at("operators")) {
            auto op = parse_operator_code(code.get<std::string>());
            if (!op) throw Error("catalog: unknown operator " + code.get<std::string>());
            set.enabled_operators.insert(*op);
        }
        set.duplicates_removed = doc.value("duplicates_removed", std::size_t{0});
        for (const auto& j : doc.at("mutants")) {
            Mutant m;
            m.id = j.at("id").get<std::string>();
            auto op = parse_operator_code(j.at("operator").get<std::string>());
            auto status = parse_mutant_status(j.at("status").get<std::string>());
            if (!op || !status) throw Error("catalog: bad record for " + m.id);
            m.point.op = *op;
            m.status = *status;
            m.source_path = j.at("file").get<std::string>();
            m.point.target_span = span_from_json(j.at("span"));
            m.point.original_text = j.at("original").get<std::string>();
            m.point.replacement_text = j.at("replacement").get<std::string>();
            m.point.node_path = j.value("node_path", std::vector<std::uint32_t>{});
            m.point.description = j.value("description", std::string());
            set.mutants.push_back(std::move(m));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed catalog: ") + e.what());
    }
    return set;
}

} // namespace solmut
