#include <array>

#include "operator_support.hpp"
#include "solmut/tables.hpp"

namespace solmut {

using detail::for_each;
using detail::PointSink;

namespace {

constexpr std::array<std::string_view, 5> kArithmetic{"+", "-", "*", "/", "%"};
constexpr std::array<std::string_view, 6> kRelational{">", ">=", "<", "<=", "==", "!="};
constexpr std::array<std::string_view, 3> kBitwise{"&", "|", "^"};
constexpr std::array<std::string_view, 5> kArithmeticAssign{"+=", "-=", "*=", "/=", "%="};
constexpr std::array<std::string_view, 3> kBitwiseAssign{"&=", "|=", "^="};

template <std::size_t N>
bool in(const std::array<std::string_view, N>& set, std::string_view op) {
    return table_contains(set, op);
}

template <std::size_t N>
void substitute(PointSink& sink, OperatorCode code, const Expression& e, const VisitContext& ctx,
                const std::array<std::string_view, N>& group) {
    for (auto alt : group)
        if (alt != e.op) sink.add(code, *e.operator_span, std::string(alt), ctx);
}

bool is_binary(const Expression& e) { return e.kind == ExprKind::binary_op && e.operator_span; }

} // namespace

std::vector<MutationPoint> enumerate_aor(const SourceUnit& unit) {
    PointSink sink(unit);
    for_each<Expression>(unit, [&](const Expression& e, const VisitContext& ctx) {
        if (is_binary(e) && in(kArithmetic, e.op)) {
            substitute(sink, OperatorCode::AORB, e, ctx, kArithmetic);
        } else if (e.kind == ExprKind::unary_op && (e.op == "++" || e.op == "--")) {
            sink.add(OperatorCode::AORS, *e.operator_span, e.op == "++" ? "--" : "++", ctx);
        }
    });
    return sink.finish();
}

// Identifier reads that appear as an operand of an arithmetic or relational
// operator, as the right-hand side of an assignment, as a whole initializer,
// or as a whole return value.
std::vector<MutationPoint> enumerate_aoi(const SourceUnit& unit) {
    PointSink sink(unit);
    for_each<Expression>(unit, [&](const Expression& e, const VisitContext& ctx) {
        if (e.kind != ExprKind::identifier || e.text == "now" || e.text == "this" || e.text == "super")
            return;
        bool site = false;
        if (auto parent = detail::parent_expression(ctx)) {
            if (parent->kind == ExprKind::binary_op)
                site = in(kArithmetic, parent->op) || parent->op == "**" || in(kRelational, parent->op);
            else if (parent->kind == ExprKind::assignment)
                site = &parent->operands[1] == &e;
        } else if (auto stmt = node_as<Statement>(ctx.parent())) {
            site = (stmt->kind == StmtKind::return_ || stmt->kind == StmtKind::variable_declaration) &&
                   !stmt->expressions.empty() && &stmt->expressions.front() == &e;
        } else if (auto decl = node_as<VariableDeclaration>(ctx.parent())) {
            site = decl->value && &*decl->value == &e;
        }
        if (!site) return;
        sink.add(OperatorCode::AOI, e.span, "++" + e.text, ctx);
        sink.add(OperatorCode::AOI, e.span, "--" + e.text, ctx);
        sink.add(OperatorCode::AOI, e.span, "(-" + e.text + ")", ctx);
    });
    return sink.finish();
}

std::vector<MutationPoint> enumerate_ror(const SourceUnit& unit) {
    PointSink sink(unit);
    for_each<Expression>(unit, [&](const Expression& e, const VisitContext& ctx) {
        if (!is_binary(e) || !in(kRelational, e.op)) return;
        substitute(sink, OperatorCode::ROR, e, ctx, kRelational);
        sink.add(OperatorCode::ROR, e.span, "true", ctx);
        sink.add(OperatorCode::ROR, e.span, "false", ctx);
    });
    return sink.finish();
}

std::vector<MutationPoint> enumerate_cor(const SourceUnit& unit) {
    PointSink sink(unit);
    for_each<Expression>(unit, [&](const Expression& e, const VisitContext& ctx) {
        if (is_binary(e) && (e.op == "&&" || e.op == "||"))
            sink.add(OperatorCode::COR, *e.operator_span, e.op == "&&" ? "||" : "&&", ctx);
    });
    return sink.finish();
}

std::vector<MutationPoint> enumerate_lor(const SourceUnit& unit) {
    PointSink sink(unit);
    for_each<Expression>(unit, [&](const Expression& e, const VisitContext& ctx) {
        if (is_binary(e) && in(kBitwise, e.op)) substitute(sink, OperatorCode::LOR, e, ctx, kBitwise);
    });
    return sink.finish();
}

std::vector<MutationPoint> enumerate_asr(const SourceUnit& unit) {
    PointSink sink(unit);
    for_each<Expression>(unit, [&](const Expression& e, const VisitContext& ctx) {
        if (e.kind != ExprKind::assignment) return;
        if (in(kArithmeticAssign, e.op)) substitute(sink, OperatorCode::ASR, e, ctx, kArithmeticAssign);
        else if (in(kBitwiseAssign, e.op)) substitute(sink, OperatorCode::ASR, e, ctx, kBitwiseAssign);
    });
    return sink.finish();
}

std::vector<MutationPoint> enumerate_sdl(const SourceUnit& unit) {
    PointSink sink(unit);
    for_each<Statement>(unit, [&](const Statement& s, const VisitContext& ctx) {
        switch (s.kind) {
        case StmtKind::expression: {
            // A for-loop initializer is a header part, not a statement.
            auto parent = node_as<Statement>(ctx.parent());
            if (parent && parent->kind == StmtKind::for_ && !parent->init.empty() && &parent->init[0] == &s)
                return;
            break;
        }
        case StmtKind::return_: {
            auto fn = ctx.enclosing<FunctionDefinition>();
            if (!fn || !fn->returns.empty()) return;
            break;
        }
        case StmtKind::emit:
        case StmtKind::delete_:
        case StmtKind::break_:
        case StmtKind::continue_:
            break;
        default:
            return;
        }
        sink.add(OperatorCode::SDL, s.span, detail::delete_statement(unit.text(s.span), ctx), ctx);
    });
    return sink.finish();
}

std::vector<MutationPoint> enumerate_rvr(const SourceUnit& unit) {
    PointSink sink(unit);
    for_each<Statement>(unit, [&](const Statement& s, const VisitContext& ctx) {
        if (s.kind != StmtKind::return_ || s.expressions.empty()) return;
        const auto& value = s.expressions.front();
        auto fn = ctx.enclosing<FunctionDefinition>();
        std::vector<std::string> replacements{"0"};
        if (fn && fn->returns.size() == 1 && fn->returns[0].type.kind == TypeName::Kind::elementary) {
            const auto& t = fn->returns[0].type.text;
            if (t == "bool")
                replacements = {"true", "false"};
            else if (t == "address")
                replacements = {"address(0)"};
            else if (t.starts_with("uint") || t.starts_with("int") || t.starts_with("fixed") ||
                     t.starts_with("ufixed"))
                replacements = {"0", "1"};
        }
        for (auto& r : replacements) sink.add(OperatorCode::RVR, value.outer_span, r, ctx);
    });
    return sink.finish();
}

std::vector<MutationPoint> enumerate_csc(const SourceUnit& unit) {
    PointSink sink(unit);
    for_each<Statement>(unit, [&](const Statement& s, const VisitContext& ctx) {
        if (!s.condition) return;
        sink.add(OperatorCode::CSC, s.condition->outer_span, "true", ctx);
        sink.add(OperatorCode::CSC, s.condition->outer_span, "false", ctx);
    });
    return sink.finish();
}

} // namespace solmut
