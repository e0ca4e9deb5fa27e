#include "solmut/ast_json.hpp"

#include "json.hpp"

#include "solmut/traverse.hpp"

using nlohmann::ordered_json;

namespace solmut {

namespace {

ordered_json type_json(const TypeName& t) {
    ordered_json j{{"text", t.text}};
    if (t.address_payable) j["payable"] = true;
    if (!t.args.empty()) {
        ordered_json args = ordered_json::array();
        for (const auto& a : t.args) args.push_back(type_json(a));
        j["args"] = args;
    }
    return j;
}

ordered_json node_json(NodeRef node) {
    Span s = span_of(node);
    ordered_json j{{"node", node_name(node)}, {"span", {s.start_byte, s.end_byte}}};
    if (auto c = node_as<ContractDefinition>(node)) {
        j["kind"] = to_string(c->kind);
        j["name"] = c->name;
    } else if (auto f = node_as<FunctionDefinition>(node)) {
        j["name"] = f->name ? ordered_json(*f->name) : ordered_json();
        if (f->visibility) j["visibility"] = to_string(*f->visibility);
        if (f->state_mutability) j["state_mutability"] = to_string(*f->state_mutability);
    } else if (auto v = node_as<VariableDeclaration>(node)) {
        j["type"] = type_json(v->type);
        j["name"] = v->name;
        if (v->location) j["location"] = to_string(*v->location);
    } else if (auto st = node_as<Statement>(node)) {
        j["kind"] = to_string(st->kind);
    } else if (auto e = node_as<Expression>(node)) {
        j["kind"] = to_string(e->kind);
        if (!e->op.empty()) j["op"] = e->op;
        if (!e->text.empty()) j["text"] = e->text;
        if (e->unit) j["unit"] = *e->unit;
        if (e->parenthesized) j["parenthesized"] = true;
    } else if (auto m = node_as<ModifierInvocation>(node)) {
        j["name"] = m->name;
    } else if (auto md = node_as<ModifierDefinition>(node)) {
        j["name"] = md->name;
    }
    auto kids = children(node);
    if (!kids.empty()) {
        ordered_json arr = ordered_json::array();
        for (auto k : kids) arr.push_back(node_json(k));
        j["children"] = arr;
    }
    return j;
}

} // namespace

std::string serialize(const SourceUnit& unit) { return node_json(NodeRef{&unit}).dump(); }

} // namespace solmut
