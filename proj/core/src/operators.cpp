#include "solmut/operators.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>

#include "solmut/errors.hpp"

namespace solmut {

namespace {

constexpr std::string_view kNames[] = {
    "AORB", "AORS", "AOI", "ROR", "COR", "LOR", "ASR", "SDL", "RVR", "CSC", "FSC", "FVC", "DLR",
    "VTR",  "PKD",  "DKD", "GVC", "MFR", "AVR", "EUR", "TUR", "RSD", "RSC", "ASD", "ASC"};

} // namespace

std::string_view code_name(OperatorCode code) { return kNames[static_cast<int>(code)]; }

std::optional<OperatorCode> parse_operator_code(std::string_view name) {
    for (auto code : kAllOperators)
        if (code_name(code) == name) return code;
    return std::nullopt;
}

bool is_general(OperatorCode code) { return static_cast<int>(code) <= static_cast<int>(OperatorCode::CSC); }

OperatorSet all_operators() { return OperatorSet(kAllOperators.begin(), kAllOperators.end()); }

OperatorSet parse_operator_list(std::string_view list) {
    OperatorSet out;
    std::size_t pos = 0;
    while (pos <= list.size()) {
        auto comma = list.find(',', pos);
        if (comma == std::string_view::npos) comma = list.size();
        auto item = list.substr(pos, comma - pos);
        while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) item.remove_prefix(1);
        while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.remove_suffix(1);
        if (!item.empty()) {
            auto code = parse_operator_code(item);
            if (!code) throw Error("unknown operator code '" + std::string(item) + "'");
            out.insert(*code);
        }
        pos = comma + 1;
    }
    return out;
}

bool point_less(const MutationPoint& a, const MutationPoint& b) {
    return std::tie(a.target_span.start_byte, a.target_span.end_byte, a.op, a.replacement_text) <
           std::tie(b.target_span.start_byte, b.target_span.end_byte, b.op, b.replacement_text);
}

std::string comment_out(std::string_view text) {
    if (text.find("*/") == std::string_view::npos) return "/*" + std::string(text) + "*/";
    std::string out = "//";
    for (char c : text) {
        out += c;
        if (c == '\n') out += "//";
    }
    return out + "\n";
}

std::vector<MutationPoint> enumerate(const SourceUnit& unit, const OperatorSet& ops, std::uint64_t seed) {
    using Fn = std::vector<MutationPoint> (*)(const SourceUnit&);
    struct Entry {
        Fn fn;
        std::vector<OperatorCode> covers;
    };
    using O = OperatorCode;
    const Entry entries[] = {
        {enumerate_aor, {O::AORB, O::AORS}}, {enumerate_aoi, {O::AOI}}, {enumerate_ror, {O::ROR}},
        {enumerate_cor, {O::COR}},           {enumerate_lor, {O::LOR}}, {enumerate_asr, {O::ASR}},
        {enumerate_sdl, {O::SDL}},           {enumerate_rvr, {O::RVR}}, {enumerate_csc, {O::CSC}},
        {enumerate_fsc, {O::FSC}},           {enumerate_fvc, {O::FVC}}, {enumerate_dlr, {O::DLR}},
        {enumerate_vtr, {O::VTR}},           {enumerate_pkd, {O::PKD}}, {enumerate_dkd, {O::DKD}},
        {enumerate_mfr, {O::MFR}},           {enumerate_avr, {O::AVR}}, {enumerate_eur, {O::EUR}},
        {enumerate_tur, {O::TUR}},           {enumerate_require_ops, {O::RSD, O::RSC}},
        {enumerate_assert_ops, {O::ASD, O::ASC}},
    };
    std::vector<MutationPoint> out;
    auto keep = [&](std::vector<MutationPoint> points) {
        for (auto& p : points)
            if (ops.count(p.op)) out.push_back(std::move(p));
    };
    for (const auto& entry : entries) {
        bool wanted = std::any_of(entry.covers.begin(), entry.covers.end(),
                                  [&](OperatorCode c) { return ops.count(c) > 0; });
        if (wanted) keep(entry.fn(unit));
    }
    if (ops.count(O::GVC)) keep(enumerate_gvc(unit, seed));
    std::sort(out.begin(), out.end(), point_less);
    return out;
}

} // namespace solmut
