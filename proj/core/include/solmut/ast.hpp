#pragma once

#include <optional>
#include <string>
#include <vector>

#include "solmut/span.hpp"

namespace solmut {

// Syntax tree for the supported Solidity subset. Nodes are plain values;
// trivia is reachable only through spans into SourceUnit::source, and the
// tree is never printed back. Mutants are produced by splicing the original
// text.

enum class Visibility { public_, external, internal, private_ };
enum class StateMutability { pure, view, payable, constant };
enum class DataLocation { memory, storage, calldata };

const char* to_string(Visibility v);
const char* to_string(StateMutability m);
const char* to_string(DataLocation l);

struct Expression;

/// Not a traversal node: a declaration's type, kept as data.
struct TypeName {
    enum class Kind { elementary, user_defined, array, mapping };

    Kind kind = Kind::elementary;
    std::string text;  // elementary keyword verbatim, or dotted user-defined path
    Span span;         // whole type
    Span keyword_span; // elementary: the keyword token; otherwise == span
    bool address_payable = false;
    std::vector<TypeName> args; // array: [element]; mapping: [key, value]
};

enum class ExprKind {
    binary_op,
    unary_op,
    assignment,
    conditional,
    number_literal,
    string_literal,
    bool_literal,
    identifier,
    member_access,
    index_access,
    function_call,
    elementary_type_name,
    tuple,
    new_expression,
};

const char* to_string(ExprKind kind);

struct Expression {
    ExprKind kind = ExprKind::identifier;
    Span span; // excludes enclosing parentheses
    bool parenthesized = false;
    Span outer_span; // includes enclosing parentheses; == span otherwise

    std::string op; // binary/unary/assignment lexeme
    std::optional<Span> operator_span;
    bool prefix = false; // unary_op

    // identifier: name; number_literal: digits; string/bool literal: lexeme;
    // member_access: canonical dotted path, or empty when the object is not a
    // plain path; function_call: callee text; elementary_type_name and
    // new_expression: type text.
    std::string text;
    std::string member; // member_access
    std::optional<std::string> unit;
    std::optional<Span> unit_span;

    // binary: [lhs, rhs]; unary: [operand]; assignment: [lhs, rhs];
    // conditional: [cond, then, else]; member_access: [object];
    // index_access: [base, index?]; function_call: [callee, args...];
    // tuple: elements.
    std::vector<Expression> operands;

    [[nodiscard]] bool is_call_to(std::string_view callee) const {
        return kind == ExprKind::function_call && text == callee;
    }
};

struct VariableDeclaration {
    TypeName type;
    std::optional<DataLocation> location;
    std::optional<Span> location_span;
    std::string name; // empty for unnamed parameters
    std::optional<Span> name_span;
    std::optional<Visibility> visibility;
    bool constant = false;
    bool indexed = false;
    std::optional<Expression> value; // state variable initializer
    Span span;
};

enum class StmtKind {
    expression,
    variable_declaration,
    if_,
    for_,
    while_,
    return_,
    delete_,
    block,
    emit,
    break_,
    continue_,
};

const char* to_string(StmtKind kind);

struct Statement {
    StmtKind kind = StmtKind::block;
    Span span; // includes the trailing semicolon for simple statements
    std::optional<Span> condition_span;

    // if/for/while: the condition. for: may be absent.
    std::optional<Expression> condition;
    // expression/emit/delete/return: the expression (return may have none).
    // for: the loop update expression, when present. variable_declaration:
    // the initial value, when present.
    std::vector<Expression> expressions;
    std::vector<VariableDeclaration> declarations;
    // for: init statement (0 or 1).
    std::vector<Statement> init;
    // block: statements; if: [then, else?]; for/while: [body].
    std::vector<Statement> statements;
};

struct ModifierInvocation {
    std::string name;
    std::vector<Expression> arguments;
    Span span;
};

enum class FunctionKind { function, constructor, fallback };

struct FunctionDefinition {
    FunctionKind kind = FunctionKind::function;
    std::optional<std::string> name;
    std::optional<Visibility> visibility;
    std::optional<Span> visibility_span;
    std::optional<StateMutability> state_mutability;
    std::optional<Span> state_mutability_span;
    std::vector<ModifierInvocation> modifiers;
    std::vector<VariableDeclaration> params;
    std::vector<VariableDeclaration> returns;
    std::optional<Statement> body;
    Span header_span; // from `function` up to (excluding) the body or ';'
    Span span;
};

struct StructDefinition {
    std::string name;
    std::vector<VariableDeclaration> members;
    Span span;
};

struct EnumDefinition {
    std::string name;
    std::vector<std::string> values;
    Span span;
};

struct EventDefinition {
    std::string name;
    std::vector<VariableDeclaration> params;
    bool anonymous = false;
    Span span;
};

/// Modifier bodies are opaque: parsed for balance only, never mutated.
struct ModifierDefinition {
    std::string name;
    std::vector<VariableDeclaration> params;
    Span body_span;
    Span span;
};

struct UsingDirective {
    std::string library;
    std::string target; // "*" or type text
    Span span;
};

enum class ContractKind { contract, interface, library };

const char* to_string(ContractKind kind);

struct ContractDefinition {
    ContractKind kind = ContractKind::contract;
    bool abstract = false;
    std::string name;
    std::vector<std::string> bases;
    std::vector<UsingDirective> usings;
    std::vector<StructDefinition> structs;
    std::vector<EnumDefinition> enums;
    std::vector<EventDefinition> events;
    std::vector<ModifierDefinition> modifiers;
    std::vector<VariableDeclaration> state_variables;
    std::vector<FunctionDefinition> functions;
    Span span;
};

struct PragmaDirective {
    std::string text; // everything between `pragma` and `;`
    Span span;
};

struct ImportDirective {
    std::string path; // recorded, never resolved
    Span span;
};

struct SourceUnit {
    std::string source;
    std::vector<PragmaDirective> pragmas;
    std::vector<ImportDirective> imports;
    std::vector<ContractDefinition> contracts;

    [[nodiscard]] std::string_view text(const Span& span) const { return span.slice(source); }
};

} // namespace solmut
