#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "solmut/ast.hpp"

namespace solmut {

// Table order: the ten general operators first, then the fifteen
// Solidity-specific ones. Reports and catalogs follow this order.
enum class OperatorCode {
    AORB, AORS, AOI, ROR, COR, LOR, ASR, SDL, RVR, CSC,
    FSC, FVC, DLR, VTR, PKD, DKD, GVC, MFR, AVR, EUR, TUR, RSD, RSC, ASD, ASC,
};

inline constexpr std::array<OperatorCode, 25> kAllOperators{
    OperatorCode::AORB, OperatorCode::AORS, OperatorCode::AOI, OperatorCode::ROR, OperatorCode::COR,
    OperatorCode::LOR,  OperatorCode::ASR,  OperatorCode::SDL, OperatorCode::RVR, OperatorCode::CSC,
    OperatorCode::FSC,  OperatorCode::FVC,  OperatorCode::DLR, OperatorCode::VTR, OperatorCode::PKD,
    OperatorCode::DKD,  OperatorCode::GVC,  OperatorCode::MFR, OperatorCode::AVR, OperatorCode::EUR,
    OperatorCode::TUR,  OperatorCode::RSD,  OperatorCode::RSC, OperatorCode::ASD, OperatorCode::ASC,
};

std::string_view code_name(OperatorCode code);
std::optional<OperatorCode> parse_operator_code(std::string_view name);
bool is_general(OperatorCode code);

using OperatorSet = std::set<OperatorCode>;
OperatorSet all_operators();

/// Parses "AORB,ROR,..." (whitespace tolerated). Throws Error on an unknown code.
OperatorSet parse_operator_list(std::string_view list);

struct MutationPoint {
    OperatorCode op = OperatorCode::AORB;
    Span target_span;
    std::string original_text;
    std::string replacement_text;
    std::vector<std::uint32_t> node_path;
    std::string description;
};

/// Canonical point order: (start, end, operator, replacement).
bool point_less(const MutationPoint& a, const MutationPoint& b);

// General operators. enumerate_aor yields both AORB and AORS points.
std::vector<MutationPoint> enumerate_aor(const SourceUnit& unit);
std::vector<MutationPoint> enumerate_aoi(const SourceUnit& unit);
std::vector<MutationPoint> enumerate_ror(const SourceUnit& unit);
std::vector<MutationPoint> enumerate_cor(const SourceUnit& unit);
std::vector<MutationPoint> enumerate_lor(const SourceUnit& unit);
std::vector<MutationPoint> enumerate_asr(const SourceUnit& unit);
std::vector<MutationPoint> enumerate_sdl(const SourceUnit& unit);
std::vector<MutationPoint> enumerate_rvr(const SourceUnit& unit);
std::vector<MutationPoint> enumerate_csc(const SourceUnit& unit);

// Solidity-specific operators.
std::vector<MutationPoint> enumerate_fsc(const SourceUnit& unit);
std::vector<MutationPoint> enumerate_fvc(const SourceUnit& unit);
std::vector<MutationPoint> enumerate_dlr(const SourceUnit& unit);
std::vector<MutationPoint> enumerate_vtr(const SourceUnit& unit);
std::vector<MutationPoint> enumerate_pkd(const SourceUnit& unit);
std::vector<MutationPoint> enumerate_dkd(const SourceUnit& unit);
/// seed == 0 disables the extra pseudo-random replacement.
std::vector<MutationPoint> enumerate_gvc(const SourceUnit& unit, std::uint64_t seed = 0);
std::vector<MutationPoint> enumerate_mfr(const SourceUnit& unit);
std::vector<MutationPoint> enumerate_avr(const SourceUnit& unit);
std::vector<MutationPoint> enumerate_eur(const SourceUnit& unit);
std::vector<MutationPoint> enumerate_tur(const SourceUnit& unit);
/// RSD and RSC points.
std::vector<MutationPoint> enumerate_require_ops(const SourceUnit& unit);
/// ASD and ASC points.
std::vector<MutationPoint> enumerate_assert_ops(const SourceUnit& unit);

/// Runs the enumerators covering `ops` and keeps only points whose operator
/// is in `ops`, in canonical order.
std::vector<MutationPoint> enumerate(const SourceUnit& unit, const OperatorSet& ops,
                                     std::uint64_t seed = 0);

/// Replaces `text` with a comment so the statement disappears. Uses a block
/// comment unless the text itself contains "*/".
std::string comment_out(std::string_view text);

} // namespace solmut
