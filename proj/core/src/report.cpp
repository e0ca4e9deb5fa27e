#include "solmut/report.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

#include "solmut/errors.hpp"
#include "solmut/fileio.hpp"
#include "solmut/version.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace solmut {

std::int64_t score_tenths(std::uint64_t killed, std::uint64_t live) {
    std::uint64_t n = killed + live;
    if (n == 0) return 0;
    return static_cast<std::int64_t>((2000 * killed + n) / (2 * n));
}

std::string format_tenths(std::int64_t tenths) {
    return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10);
}

std::string format_score(std::uint64_t killed, std::uint64_t live) {
    return format_tenths(score_tenths(killed, live));
}

double mutation_score(std::uint64_t non_equivalent, std::uint64_t surviving) {
    if (non_equivalent == 0) throw UndefinedScore("mutation score undefined: no non-equivalent mutants");
    return 100.0 * static_cast<double>(non_equivalent - surviving) / static_cast<double>(non_equivalent);
}

double mutation_score(const KillMatrix& matrix) {
    return mutation_score(matrix.rows(), matrix.rows() - matrix.killed_count());
}

OperatorStats& OperatorStats::operator+=(const OperatorStats& o) {
    all += o.all;
    equivalent += o.equivalent;
    compile_failed += o.compile_failed;
    killed += o.killed;
    live += o.live;
    return *this;
}

std::vector<MutantSummary> summarize(const MutantSet& set) {
    std::vector<MutantSummary> out;
    for (const auto& m : set.mutants) out.push_back({m.id, m.point.op, m.status});
    return out;
}

std::vector<MutantSummary> summarize(const KillMatrix& matrix) {
    std::vector<MutantSummary> out;
    for (const auto& id : matrix.mutant_ids) {
        auto dash = id.find('-');
        auto op = parse_operator_code(std::string_view(id).substr(0, dash));
        if (!op) throw Error("cannot tell the operator of mutant id '" + id + "'");
        out.push_back({id, *op, MutantStatus::pending});
    }
    return out;
}

std::vector<OperatorStats> operator_stats(const std::vector<MutantSummary>& mutants, const KillMatrix& matrix,
                                          const OperatorSet& enabled, const std::set<std::string>& equivalent_ids) {
    std::map<std::string_view, std::size_t> row_of;
    for (std::size_t i = 0; i < matrix.rows(); ++i) row_of[matrix.mutant_ids[i]] = i;

    std::map<OperatorCode, OperatorStats> by_op;
    for (const auto& m : mutants) {
        auto& s = by_op[m.op];
        ++s.all;
        if (equivalent_ids.count(m.id)) {
            ++s.equivalent;
            continue;
        }
        switch (m.status) {
        case MutantStatus::equivalent_marked: ++s.equivalent; break;
        case MutantStatus::compile_failed: ++s.compile_failed; break;
        case MutantStatus::killed: ++s.killed; break;
        case MutantStatus::survived: ++s.live; break;
        case MutantStatus::generated:
        case MutantStatus::pending: {
            auto it = row_of.find(m.id);
            if (it == row_of.end()) throw DimensionMismatch("no kill-matrix row for mutant " + m.id);
            ++(matrix.killed(it->second) ? s.killed : s.live);
            break;
        }
        }
    }
    std::vector<OperatorStats> rows;
    for (auto code : kAllOperators) {
        if (!enabled.count(code) && !by_op.count(code)) continue;
        auto s = by_op[code];
        s.code = std::string(code_name(code));
        rows.push_back(s);
    }
    return rows;
}

MutationReport build_report(std::vector<OperatorStats> rows, std::uint64_t seed, std::string matrix_digest) {
    MutationReport r;
    r.tool_version = std::string(kToolVersion);
    r.seed = seed;
    r.matrix_digest = std::move(matrix_digest);
    r.totals.code = "Total";
    r.general.code = "General";
    r.esc.code = "ESC";
    for (const auto& s : rows) {
        r.totals += s;
        auto code = parse_operator_code(s.code);
        (code && is_general(*code) ? r.general : r.esc) += s;
    }
    r.no_mutants = r.totals.all == 0;
    r.operators = std::move(rows);
    return r;
}

namespace {

ordered_json stats_json(const OperatorStats& s) {
    return ordered_json{{"code", s.code},       {"all", s.all},       {"equivalent", s.equivalent},
                        {"compile_failed", s.compile_failed},     {"killed", s.killed},
                        {"live", s.live},       {"score", static_cast<double>(score_tenths(s.killed, s.live)) / 10.0}};
}

OperatorStats stats_from_json(const ordered_json& j) {
    OperatorStats s;
    s.code = j.at("code").get<std::string>();
    s.all = j.at("all").get<std::uint64_t>();
    s.equivalent = j.at("equivalent").get<std::uint64_t>();
    s.compile_failed = j.at("compile_failed").get<std::uint64_t>();
    s.killed = j.at("killed").get<std::uint64_t>();
    s.live = j.at("live").get<std::uint64_t>();
    return s;
}

} // namespace

std::string report_json(const MutationReport& r) {
    ordered_json ops = ordered_json::array();
    for (const auto& s : r.operators) ops.push_back(stats_json(s));
    ordered_json doc{
        {"tool_version", r.tool_version},
        {"seed", r.seed},
        {"operators", ops},
        {"totals", stats_json(r.totals)},
        {"groups", {{"general", stats_json(r.general)}, {"esc", stats_json(r.esc)}}},
        {"matrix_digest", r.matrix_digest},
        {"no_mutants", r.no_mutants},
    };
    return doc.dump(2) + "\n";
}

MutationReport parse_report(std::string_view json_text) {
    MutationReport r;
    try {
        auto doc = ordered_json::parse(json_text);
        r.tool_version = doc.at("tool_version").get<std::string>();
        r.seed = doc.at("seed").get<std::uint64_t>();
        for (const auto& j : doc.at("operators")) r.operators.push_back(stats_from_json(j));
        r.totals = stats_from_json(doc.at("totals"));
        r.general = stats_from_json(doc.at("groups").at("general"));
        r.esc = stats_from_json(doc.at("groups").at("esc"));
        r.matrix_digest = doc.at("matrix_digest").get<std::string>();
        r.no_mutants = doc.at("no_mutants").get<bool>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed report: ") + e.what());
    }
    return r;
}

std::string report_markdown(const MutationReport& r) {
    std::ostringstream md;
    md << "# Mutation report\n\n";
    md << "tool " << r.tool_version << ", seed " << r.seed << ", matrix " << r.matrix_digest << "\n\n";
    if (r.no_mutants) md << "No mutants were generated.\n\n";
    md << "| Operator | All | Equ. | Killed | Live | MS | Compile failed |\n";
    md << "|---|---:|---:|---:|---:|---:|---:|\n";
    auto row = [&](const OperatorStats& s) {
        md << "| " << s.code << " | " << s.all << " | " << s.equivalent << " | " << s.killed << " | " << s.live
           << " | " << s.score() << " | " << s.compile_failed << " |\n";
    };
    for (const auto& s : r.operators) {
        auto code = parse_operator_code(s.code);
        if (code && is_general(*code)) row(s);
    }
    row(r.general);
    for (const auto& s : r.operators) {
        auto code = parse_operator_code(s.code);
        if (!code || !is_general(*code)) row(s);
    }
    row(r.esc);
    row(r.totals);
    return md.str();
}

void emit_report(const MutationReport& report, const fs::path& out_dir, const std::set<ReportFormat>& formats) {
    if (formats.count(ReportFormat::json)) write_file(out_dir / "report.json", report_json(report));
    if (formats.count(ReportFormat::markdown)) write_file(out_dir / "report.md", report_markdown(report));
}

} // namespace solmut
