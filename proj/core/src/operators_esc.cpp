#include <cctype>

#include "operator_support.hpp"
#include "solmut/lexer.hpp"
#include "solmut/random.hpp"
#include "solmut/tables.hpp"

namespace solmut {

using detail::for_each;
using detail::PointSink;

namespace {

constexpr std::string_view kVisibilities[] = {"public", "external", "internal", "private"};

bool digits_only(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

// Width suffix of uintN/intN/bytesN; 0 when absent.
int width(std::string_view keyword, std::string_view prefix) {
    auto rest = keyword.substr(prefix.size());
    return digits_only(rest) ? std::stoi(std::string(rest)) : 0;
}

std::vector<std::string> vtr_replacements(std::string_view kw) {
    std::vector<std::string> out;
    if (kw.starts_with("uint")) {
        int n = width(kw, "uint");
        if (kw != "uint" && n == 0) return out;
        out.push_back("int");
        if (kw == "uint" || n > 8) out.push_back("uint8");
    } else if (kw.starts_with("int")) {
        if (kw != "int" && width(kw, "int") == 0) return out;
        out.push_back("uint");
    } else if (kw.starts_with("bytes") && width(kw, "bytes") > 8) {
        out.push_back("bytes8");
    }
    return out;
}

void vtr_visit(PointSink& sink, const TypeName& type, const VisitContext& ctx) {
    if (type.kind == TypeName::Kind::elementary)
        for (auto& r : vtr_replacements(type.text)) sink.add(OperatorCode::VTR, type.keyword_span, r, ctx);
    for (const auto& arg : type.args) vtr_visit(sink, arg, ctx);
}

template <std::size_t N>
void swap_within(PointSink& sink, OperatorCode code, const Span& span, std::string_view current,
                 const std::array<std::string_view, N>& group, const VisitContext& ctx) {
    for (auto alt : group)
        if (alt != current) sink.add(code, span, std::string(alt), ctx);
}

bool is_value_global(const Expression& e) {
    if (e.parenthesized) return false;
    if (e.kind == ExprKind::identifier) return e.text == "now";
    return e.kind == ExprKind::member_access && table_contains(GlobalTable::value_globals, e.text);
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

std::vector<MutationPoint> delete_and_falsify(const SourceUnit& unit, std::string_view callee,
                                              OperatorCode deletion, OperatorCode falsify) {
    PointSink sink(unit);
    for_each<Statement>(unit, [&](const Statement& s, const VisitContext& ctx) {
        if (!detail::is_require_or_assert(s, callee)) return;
        sink.add(deletion, s.span, detail::delete_statement(unit.text(s.span), ctx), ctx);
        const auto& call = s.expressions.front();
        if (call.operands.size() >= 2) sink.add(falsify, call.operands[1].outer_span, "false", ctx);
    });
    return sink.finish();
}

} // namespace

std::vector<MutationPoint> enumerate_fsc(const SourceUnit& unit) {
    PointSink sink(unit);
    for_each<FunctionDefinition>(unit, [&](const FunctionDefinition& f, const VisitContext& ctx) {
        if (f.state_mutability == StateMutability::view)
            sink.add(OperatorCode::FSC, *f.state_mutability_span, "pure", ctx);
    });
    return sink.finish();
}

std::vector<MutationPoint> enumerate_fvc(const SourceUnit& unit) {
    PointSink sink(unit);
    for_each<FunctionDefinition>(unit, [&](const FunctionDefinition& f, const VisitContext& ctx) {
        if (!f.visibility) return;
        for (auto v : kVisibilities)
            if (v != to_string(*f.visibility)) sink.add(OperatorCode::FVC, *f.visibility_span, std::string(v), ctx);
    });
    return sink.finish();
}

std::vector<MutationPoint> enumerate_dlr(const SourceUnit& unit) {
    PointSink sink(unit);
    for_each<VariableDeclaration>(unit, [&](const VariableDeclaration& v, const VisitContext& ctx) {
        if (!v.location) return;
        const char* to = *v.location == DataLocation::memory ? "storage" : "memory";
        sink.add(OperatorCode::DLR, *v.location_span, to, ctx);
    });
    return sink.finish();
}

std::vector<MutationPoint> enumerate_vtr(const SourceUnit& unit) {
    PointSink sink(unit);
    for_each<VariableDeclaration>(unit, [&](const VariableDeclaration& v, const VisitContext& ctx) {
        vtr_visit(sink, v.type, ctx);
    });
    return sink.finish();
}

std::vector<MutationPoint> enumerate_pkd(const SourceUnit& unit) {
    PointSink sink(unit);
    const std::string_view src = unit.source;
    for_each<FunctionDefinition>(unit, [&](const FunctionDefinition& f, const VisitContext& ctx) {
        if (f.state_mutability != StateMutability::payable) return;
        auto start = f.state_mutability_span->start_byte;
        auto end = f.state_mutability_span->end_byte;
        if (start > 0 && is_space(src[start - 1])) {
            while (start > 0 && is_space(src[start - 1])) --start;
        } else {
            while (end < src.size() && is_space(src[end])) ++end;
        }
        sink.add(OperatorCode::PKD, detail::make_span(src, start, end), "", ctx);
    });
    return sink.finish();
}

std::vector<MutationPoint> enumerate_dkd(const SourceUnit& unit) {
    PointSink sink(unit);
    for_each<Statement>(unit, [&](const Statement& s, const VisitContext& ctx) {
        if (s.kind == StmtKind::delete_)
            sink.add(OperatorCode::DKD, s.span, detail::delete_statement(unit.text(s.span), ctx), ctx);
    });
    return sink.finish();
}

std::vector<MutationPoint> enumerate_gvc(const SourceUnit& unit, std::uint64_t seed) {
    PointSink sink(unit);
    for_each<Expression>(unit, [&](const Expression& e, const VisitContext& ctx) {
        if (!is_value_global(e)) return;
        sink.add(OperatorCode::GVC, e.span, "0", ctx);
        sink.add(OperatorCode::GVC, e.span, "1", ctx);
        if (seed != 0) {
            SplitMix64 rng(seed ^ (std::uint64_t{e.span.start_byte} << 32 | e.span.end_byte));
            sink.add(OperatorCode::GVC, e.span, std::to_string(rng.next()), ctx);
        }
    });
    return sink.finish();
}

std::vector<MutationPoint> enumerate_mfr(const SourceUnit& unit) {
    PointSink sink(unit);
    for_each<Expression>(unit, [&](const Expression& e, const VisitContext& ctx) {
        if (e.is_call_to("addmod")) sink.add(OperatorCode::MFR, e.operands[0].span, "mulmod", ctx);
        else if (e.is_call_to("mulmod")) sink.add(OperatorCode::MFR, e.operands[0].span, "addmod", ctx);
    });
    return sink.finish();
}

std::vector<MutationPoint> enumerate_avr(const SourceUnit& unit) {
    PointSink sink(unit);
    for_each<Expression>(unit, [&](const Expression& e, const VisitContext& ctx) {
        if (e.kind == ExprKind::member_access && !e.parenthesized &&
            table_contains(GlobalTable::address_globals, e.text))
            swap_within(sink, OperatorCode::AVR, e.span, e.text, GlobalTable::address_globals, ctx);
    });
    return sink.finish();
}

std::vector<MutationPoint> enumerate_eur(const SourceUnit& unit) {
    PointSink sink(unit);
    for_each<Expression>(unit, [&](const Expression& e, const VisitContext& ctx) {
        if (e.kind == ExprKind::number_literal && e.unit && is_ether_unit(*e.unit))
            swap_within(sink, OperatorCode::EUR, *e.unit_span, *e.unit, UnitTable::ether_units, ctx);
    });
    return sink.finish();
}

std::vector<MutationPoint> enumerate_tur(const SourceUnit& unit) {
    PointSink sink(unit);
    for_each<Expression>(unit, [&](const Expression& e, const VisitContext& ctx) {
        if (e.kind == ExprKind::number_literal && e.unit && is_time_unit(*e.unit))
            swap_within(sink, OperatorCode::TUR, *e.unit_span, *e.unit, UnitTable::time_units, ctx);
    });
    return sink.finish();
}

std::vector<MutationPoint> enumerate_require_ops(const SourceUnit& unit) {
    return delete_and_falsify(unit, "require", OperatorCode::RSD, OperatorCode::RSC);
}

std::vector<MutationPoint> enumerate_assert_ops(const SourceUnit& unit) {
    return delete_and_falsify(unit, "assert", OperatorCode::ASD, OperatorCode::ASC);
}

} // namespace solmut
