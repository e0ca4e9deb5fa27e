#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "solmut/operators.hpp"

namespace solmut {

enum class MutantStatus { generated, compile_failed, equivalent_marked, pending, killed, survived };

const char* to_string(MutantStatus status);
std::optional<MutantStatus> parse_mutant_status(std::string_view name);

/// Forward-only lifecycle: generated -> {compile_failed, equivalent_marked,
/// pending} -> {killed, survived} (the latter from pending only).
bool can_transition(MutantStatus from, MutantStatus to);

struct Mutant {
    std::string id; // "<OP>-<ordinal>-<8 hex digest>"
    MutationPoint point;
    std::string source_path;
    std::string mutated_source;
    MutantStatus status = MutantStatus::generated;

    /// Throws std::logic_error on a backward or sideways transition.
    void advance(MutantStatus next);
};

struct MutantSet {
    std::map<std::string, std::string> original_sources; // relative path -> text
    std::vector<Mutant> mutants; // operator table order, then ordinal
    std::uint64_t seed = 0;
    OperatorSet enabled_operators;
    /// Candidates dropped because an earlier one produced identical text.
    std::size_t duplicates_removed = 0;

    Mutant* find(std::string_view id);
    const Mutant* find(std::string_view id) const;
};

/// Splices point.replacement_text over point.target_span. Throws SpanMismatch
/// when the source no longer holds point.original_text there.
std::string apply_edit(std::string_view source, const MutationPoint& point);

/// Parses every source (ParseError aborts, tagged with the file), enumerates
/// the enabled operators, removes textual duplicates and assigns ids.
MutantSet generate_mutants(const std::map<std::string, std::string>& sources, const OperatorSet& ops,
                           std::uint64_t seed = 0);

/// 8-hex content digest of a mutant's (path, text).
std::string mutant_digest(std::string_view path, std::string_view mutated_source);

/// Marks listed ids equivalent. Returns warnings (unknown ids, mutants no
/// longer in the generated state). Throws Error if the file is unreadable.
std::vector<std::string> load_equivalence_marks(MutantSet& set, const std::filesystem::path& marks_file);

/// Parses marks-file text: one id per line, '#' starts a comment.
std::vector<std::string> parse_marks(std::string_view text);

// --- workspaces -----------------------------------------------------------

/// Copies `project` into `dest` (replacing it), skipping `.git` and anything
/// under `exclude`.
void copy_project(const std::filesystem::path& project, const std::filesystem::path& dest,
                  const std::filesystem::path& exclude);

std::filesystem::path mutant_dir(const std::filesystem::path& out_dir, std::string_view id);
std::filesystem::path original_dir(const std::filesystem::path& out_dir);

/// Materializes out/original/ and out/mutants/<id>/ (project copy + patched
/// file + mutant.json) for every mutant.
void materialize(const MutantSet& set, const std::filesystem::path& project, const std::filesystem::path& out_dir);

/// Rewrites out/mutants/<id>/mutant.json with the current status.
void write_mutant_record(const Mutant& mutant, const std::filesystem::path& out_dir);

// --- compile adapter ------------------------------------------------------

struct CompileOptions {
    std::string command; // invoked as `<command> <workspace-dir>` via /bin/sh
    std::chrono::seconds timeout{60};
    unsigned jobs = 1;
};

enum class CompileOutcome { ok, failed, timed_out };

/// Throws AdapterError for exit >= 2 or an unrunnable adapter.
CompileOutcome compile_workspace(const std::filesystem::path& workspace, const CompileOptions& options);

/// Compiles out/original/ (must succeed, else AdapterError) and then every
/// mutant still in the generated state; statuses become compile_failed or
/// pending. Returns warnings (timeouts). Workspaces must be materialized.
std::vector<std::string> compile_filter(MutantSet& set, const std::filesystem::path& out_dir,
                                        const CompileOptions& options);

/// Without a compile command every generated mutant becomes pending.
void accept_uncompiled(MutantSet& set);

// --- catalog --------------------------------------------------------------

/// Stable catalog text (out/mutants.json). No timestamps, no absolute paths.
std::string catalog_json(const MutantSet& set);

/// Mutants as recorded in a catalog; original sources are not stored there.
MutantSet parse_catalog(std::string_view json_text);

} // namespace solmut
