#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "solmut/harness.hpp"
#include "solmut/operators.hpp"
#include "solmut/pipeline.hpp"

namespace solmut {

/// round-half-up(1000 * killed / (killed + live)), i.e. the score in tenths
/// of a percent; 0 when killed + live == 0. Exact integer arithmetic.
std::int64_t score_tenths(std::uint64_t killed, std::uint64_t live);

/// "46.2"-style rendering of score_tenths.
std::string format_score(std::uint64_t killed, std::uint64_t live);
std::string format_tenths(std::int64_t tenths);

/// 100 * killed rows / rows, where killed means a fail or timeout cell.
/// Throws UndefinedScore when the matrix has no rows.
double mutation_score(const KillMatrix& matrix);

/// The same over explicit counts: 100 * (non_equiv - surviving) / non_equiv.
double mutation_score(std::uint64_t non_equivalent, std::uint64_t surviving);

struct OperatorStats {
    std::string code;
    std::uint64_t all = 0;
    std::uint64_t equivalent = 0;
    std::uint64_t compile_failed = 0;
    std::uint64_t killed = 0;
    std::uint64_t live = 0;

    [[nodiscard]] std::string score() const { return format_score(killed, live); }
    OperatorStats& operator+=(const OperatorStats& other);
};

/// Catalog-free view of one mutant, enough for statistics.
struct MutantSummary {
    std::string id;
    OperatorCode op = OperatorCode::AORB;
    MutantStatus status = MutantStatus::pending;
};

std::vector<MutantSummary> summarize(const MutantSet& set);

/// Summaries recovered from matrix rows alone; the operator comes from the
/// id prefix. Throws Error for an id that does not start with a known code.
std::vector<MutantSummary> summarize(const KillMatrix& matrix);

/// One row per enabled operator, table order, rows with all == 0 included.
/// Pending mutants take killed/live from their matrix row; mutants listed in
/// `equivalent_ids` count as equivalent whatever their status. Throws
/// DimensionMismatch for a pending mutant without a row.
std::vector<OperatorStats> operator_stats(const std::vector<MutantSummary>& mutants, const KillMatrix& matrix,
                                          const OperatorSet& enabled,
                                          const std::set<std::string>& equivalent_ids = {});

struct MutationReport {
    std::string tool_version;
    std::uint64_t seed = 0;
    std::vector<OperatorStats> operators;
    OperatorStats totals;
    OperatorStats general;
    OperatorStats esc;
    std::string matrix_digest;
    bool no_mutants = true;
};

MutationReport build_report(std::vector<OperatorStats> rows, std::uint64_t seed, std::string matrix_digest);

std::string report_json(const MutationReport& report);
MutationReport parse_report(std::string_view json_text);
std::string report_markdown(const MutationReport& report);

enum class ReportFormat { json, markdown };

/// Writes out_dir/report.json and/or out_dir/report.md.
void emit_report(const MutationReport& report, const std::filesystem::path& out_dir,
                 const std::set<ReportFormat>& formats = {ReportFormat::json, ReportFormat::markdown});

} // namespace solmut
