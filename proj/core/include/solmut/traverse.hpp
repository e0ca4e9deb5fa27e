#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "solmut/ast.hpp"

namespace solmut {

using NodeRef = std::variant<const SourceUnit*, const PragmaDirective*, const ImportDirective*,
                             const ContractDefinition*, const UsingDirective*, const StructDefinition*,
                             const EnumDefinition*, const EventDefinition*, const ModifierDefinition*,
                             const FunctionDefinition*, const ModifierInvocation*,
                             const VariableDeclaration*, const Statement*, const Expression*>;

/// "SourceUnit", "ContractDefinition", "FunctionDefinition", ...
const char* node_name(NodeRef node);
Span span_of(NodeRef node);

/// Direct children, ordered by span start.
std::vector<NodeRef> children(NodeRef node);

template <typename T>
const T* node_as(NodeRef node) {
    auto p = std::get_if<const T*>(&node);
    return p ? *p : nullptr;
}

struct VisitContext {
    /// Root first; does not include the visited node.
    std::span<const NodeRef> ancestors;
    /// Child indices from the root to the visited node.
    std::span<const std::uint32_t> path;

    [[nodiscard]] NodeRef parent() const { return ancestors.back(); }

    /// Innermost ancestor of type T, or nullptr.
    template <typename T>
    [[nodiscard]] const T* enclosing() const {
        for (auto it = ancestors.rbegin(); it != ancestors.rend(); ++it)
            if (auto p = node_as<T>(*it)) return p;
        return nullptr;
    }
};

using Visitor = std::function<void(NodeRef, const VisitContext&)>;

/// Preorder walk; every node is visited exactly once, siblings in source order.
void traverse(const SourceUnit& unit, const Visitor& visit);

std::vector<std::string> trace(const SourceUnit& unit);
std::size_t node_count(const SourceUnit& unit);

} // namespace solmut
