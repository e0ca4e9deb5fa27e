#include "solmut/traverse.hpp"

#include <algorithm>

namespace solmut {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

template <typename T>
void add_all(std::vector<NodeRef>& out, const std::vector<T>& items) {
    for (const auto& item : items) out.emplace_back(&item);
}

void walk(NodeRef node, const Visitor& visit, std::vector<NodeRef>& ancestors,
          std::vector<std::uint32_t>& path) {
    visit(node, VisitContext{ancestors, path});
    ancestors.push_back(node);
    auto kids = children(node);
    for (std::uint32_t i = 0; i < kids.size(); ++i) {
        path.push_back(i);
        walk(kids[i], visit, ancestors, path);
        path.pop_back();
    }
    ancestors.pop_back();
}

} // namespace

const char* node_name(NodeRef node) {
    return std::visit(overloaded{
                          [](const SourceUnit*) { return "SourceUnit"; },
                          [](const PragmaDirective*) { return "PragmaDirective"; },
                          [](const ImportDirective*) { return "ImportDirective"; },
                          [](const ContractDefinition*) { return "ContractDefinition"; },
                          [](const UsingDirective*) { return "UsingForDirective"; },
                          [](const StructDefinition*) { return "StructDefinition"; },
                          [](const EnumDefinition*) { return "EnumDefinition"; },
                          [](const EventDefinition*) { return "EventDefinition"; },
                          [](const ModifierDefinition*) { return "ModifierDefinition"; },
                          [](const FunctionDefinition*) { return "FunctionDefinition"; },
                          [](const ModifierInvocation*) { return "ModifierInvocation"; },
                          [](const VariableDeclaration*) { return "VariableDeclaration"; },
                          [](const Statement*) { return "Statement"; },
                          [](const Expression*) { return "Expression"; },
                      },
                      node);
}

Span span_of(NodeRef node) {
    return std::visit(overloaded{
                          [](const SourceUnit* u) {
                              return Span{0, static_cast<std::uint32_t>(u->source.size()), 1, 1};
                          },
                          [](const auto* n) { return n->span; },
                      },
                      node);
}

std::vector<NodeRef> children(NodeRef node) {
    std::vector<NodeRef> out;
    std::visit(overloaded{
                   [&](const SourceUnit* u) {
                       add_all(out, u->pragmas);
                       add_all(out, u->imports);
                       add_all(out, u->contracts);
                   },
                   [](const PragmaDirective*) {},
                   [](const ImportDirective*) {},
                   [&](const ContractDefinition* c) {
                       add_all(out, c->usings);
                       add_all(out, c->structs);
                       add_all(out, c->enums);
                       add_all(out, c->events);
                       add_all(out, c->modifiers);
                       add_all(out, c->state_variables);
                       add_all(out, c->functions);
                   },
                   [](const UsingDirective*) {},
                   [&](const StructDefinition* s) { add_all(out, s->members); },
                   [](const EnumDefinition*) {},
                   [&](const EventDefinition* e) { add_all(out, e->params); },
                   [&](const ModifierDefinition* m) { add_all(out, m->params); },
                   [&](const FunctionDefinition* f) {
                       add_all(out, f->params);
                       add_all(out, f->modifiers);
                       add_all(out, f->returns);
                       if (f->body) out.emplace_back(&*f->body);
                   },
                   [&](const ModifierInvocation* m) { add_all(out, m->arguments); },
                   [&](const VariableDeclaration* v) {
                       if (v->value) out.emplace_back(&*v->value);
                   },
                   [&](const Statement* s) {
                       add_all(out, s->init);
                       if (s->condition) out.emplace_back(&*s->condition);
                       add_all(out, s->declarations);
                       add_all(out, s->expressions);
                       add_all(out, s->statements);
                   },
                   [&](const Expression* e) { add_all(out, e->operands); },
               },
               node);
    std::stable_sort(out.begin(), out.end(), [](NodeRef a, NodeRef b) {
        return span_of(a).start_byte < span_of(b).start_byte;
    });
    return out;
}

void traverse(const SourceUnit& unit, const Visitor& visit) {
    std::vector<NodeRef> ancestors;
    std::vector<std::uint32_t> path;
    walk(NodeRef{&unit}, visit, ancestors, path);
}

std::vector<std::string> trace(const SourceUnit& unit) {
    std::vector<std::string> out;
    traverse(unit, [&](NodeRef n, const VisitContext&) { out.emplace_back(node_name(n)); });
    return out;
}

std::size_t node_count(const SourceUnit& unit) {
    std::size_t n = 0;
    traverse(unit, [&](NodeRef, const VisitContext&) { ++n; });
    return n;
}

} // namespace solmut
