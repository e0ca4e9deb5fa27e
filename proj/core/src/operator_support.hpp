#pragma once

#include <algorithm>
#include <functional>

#include "solmut/operators.hpp"
#include "solmut/traverse.hpp"

namespace solmut::detail {

/// Collects points for one unit and drops no-op replacements.
class PointSink {
public:
    explicit PointSink(const SourceUnit& unit) : unit_(unit) {}

    void add(OperatorCode op, const Span& span, std::string replacement, const VisitContext& ctx) {
        std::string original(unit_.text(span));
        if (original == replacement) return;
        MutationPoint p;
        p.op = op;
        p.target_span = span;
        p.node_path.assign(ctx.path.begin(), ctx.path.end());
        p.description = std::string(code_name(op)) + " " + std::to_string(span.start_line) + ":" +
                        std::to_string(span.start_col) + " '" + one_line(original) + "' -> '" +
                        one_line(replacement) + "'";
        p.original_text = std::move(original);
        p.replacement_text = std::move(replacement);
        points_.push_back(std::move(p));
    }

    std::vector<MutationPoint> finish() {
        std::sort(points_.begin(), points_.end(), point_less);
        return std::move(points_);
    }

    [[nodiscard]] const SourceUnit& unit() const { return unit_; }

private:
    static std::string one_line(std::string_view s) {
        std::string out;
        for (char c : s) out += (c == '\n' || c == '\r' || c == '\t') ? ' ' : c;
        if (out.size() > 60) out = out.substr(0, 57) + "...";
        return out;
    }

    const SourceUnit& unit_;
    std::vector<MutationPoint> points_;
};

template <typename T>
void for_each(const SourceUnit& unit, const std::function<void(const T&, const VisitContext&)>& fn) {
    traverse(unit, [&](NodeRef node, const VisitContext& ctx) {
        if (auto p = node_as<T>(node)) fn(*p, ctx);
    });
}

inline const Expression* parent_expression(const VisitContext& ctx) {
    return ctx.ancestors.empty() ? nullptr : node_as<Expression>(ctx.parent());
}

/// Span with line/column computed from the source; for spans that do not
/// coincide with a token start.
inline Span make_span(std::string_view source, std::uint32_t start, std::uint32_t end) {
    Span s{start, end, 1, 1};
    for (std::uint32_t i = 0; i < start; ++i) {
        if (source[i] == '\n') {
            ++s.start_line;
            s.start_col = 1;
        } else {
            ++s.start_col;
        }
    }
    return s;
}

/// Statement-deletion text. A statement that is the direct body of an
/// if/for/while is replaced by an empty block so the next statement does
/// not slide into the body.
inline std::string delete_statement(std::string_view text, const VisitContext& ctx) {
    auto comment = comment_out(text);
    auto parent = ctx.ancestors.empty() ? nullptr : node_as<Statement>(ctx.parent());
    if (parent && parent->kind != StmtKind::block) return "{" + comment + "}";
    return comment;
}

inline bool is_require_or_assert(const Statement& s, std::string_view callee) {
    if (s.kind != StmtKind::expression || s.expressions.empty()) return false;
    const auto& e = s.expressions.front();
    return !e.parenthesized && e.is_call_to(callee);
}

} // namespace solmut::detail
