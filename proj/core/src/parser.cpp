#include "solmut/parser.hpp"

#include <initializer_list>

#include "solmut/errors.hpp"
#include "solmut/lexer.hpp"

namespace solmut {

const char* to_string(Visibility v) {
    switch (v) {
    case Visibility::public_: return "public";
    case Visibility::external: return "external";
    case Visibility::internal: return "internal";
    case Visibility::private_: return "private";
    }
    return "?";
}

const char* to_string(StateMutability m) {
    switch (m) {
    case StateMutability::pure: return "pure";
    case StateMutability::view: return "view";
    case StateMutability::payable: return "payable";
    case StateMutability::constant: return "constant";
    }
    return "?";
}

const char* to_string(DataLocation l) {
    switch (l) {
    case DataLocation::memory: return "memory";
    case DataLocation::storage: return "storage";
    case DataLocation::calldata: return "calldata";
    }
    return "?";
}

const char* to_string(ExprKind kind) {
    switch (kind) {
    case ExprKind::binary_op: return "binary-op";
    case ExprKind::unary_op: return "unary-op";
    case ExprKind::assignment: return "assignment";
    case ExprKind::conditional: return "conditional";
    case ExprKind::number_literal: return "number-literal";
    case ExprKind::string_literal: return "string-literal";
    case ExprKind::bool_literal: return "bool-literal";
    case ExprKind::identifier: return "identifier";
    case ExprKind::member_access: return "member-access";
    case ExprKind::index_access: return "index-access";
    case ExprKind::function_call: return "function-call";
    case ExprKind::elementary_type_name: return "elementary-type-name";
    case ExprKind::tuple: return "tuple";
    case ExprKind::new_expression: return "new-expression";
    }
    return "?";
}

const char* to_string(StmtKind kind) {
    switch (kind) {
    case StmtKind::expression: return "expression-statement";
    case StmtKind::variable_declaration: return "variable-declaration-statement";
    case StmtKind::if_: return "if";
    case StmtKind::for_: return "for";
    case StmtKind::while_: return "while";
    case StmtKind::return_: return "return";
    case StmtKind::delete_: return "delete-statement";
    case StmtKind::block: return "block";
    case StmtKind::emit: return "emit";
    case StmtKind::break_: return "break";
    case StmtKind::continue_: return "continue";
    }
    return "?";
}

const char* to_string(ContractKind kind) {
    switch (kind) {
    case ContractKind::contract: return "contract";
    case ContractKind::interface: return "interface";
    case ContractKind::library: return "library";
    }
    return "?";
}

namespace {

struct BinaryLevel {
    int precedence;
};

// Solidity's documented table, loosest first.
int binary_precedence(const Token& t) {
    if (t.kind != TokenKind::op) return -1;
    const auto& s = t.lexeme;
    if (s == "||") return 1;
    if (s == "&&") return 2;
    if (s == "==" || s == "!=") return 3;
    if (s == "<" || s == ">" || s == "<=" || s == ">=") return 4;
    if (s == "|") return 5;
    if (s == "^") return 6;
    if (s == "&") return 7;
    if (s == "<<" || s == ">>") return 8;
    if (s == "+" || s == "-") return 9;
    if (s == "*" || s == "/" || s == "%") return 10;
    if (s == "**") return 11;
    return -1;
}

bool is_assignment_op(const Token& t) {
    if (t.kind != TokenKind::op) return false;
    const auto& s = t.lexeme;
    return s == "=" || s == "+=" || s == "-=" || s == "*=" || s == "/=" || s == "%=" || s == "&=" ||
           s == "|=" || s == "^=" || s == "<<=" || s == ">>=";
}

std::optional<Visibility> visibility_of(const Token& t) {
    if (t.kind != TokenKind::keyword) return std::nullopt;
    if (t.lexeme == "public") return Visibility::public_;
    if (t.lexeme == "external") return Visibility::external;
    if (t.lexeme == "internal") return Visibility::internal;
    if (t.lexeme == "private") return Visibility::private_;
    return std::nullopt;
}

std::optional<StateMutability> mutability_of(const Token& t) {
    if (t.kind != TokenKind::keyword) return std::nullopt;
    if (t.lexeme == "pure") return StateMutability::pure;
    if (t.lexeme == "view") return StateMutability::view;
    if (t.lexeme == "payable") return StateMutability::payable;
    if (t.lexeme == "constant") return StateMutability::constant;
    return std::nullopt;
}

std::optional<DataLocation> location_of(const Token& t) {
    if (t.kind != TokenKind::keyword) return std::nullopt;
    if (t.lexeme == "memory") return DataLocation::memory;
    if (t.lexeme == "storage") return DataLocation::storage;
    if (t.lexeme == "calldata") return DataLocation::calldata;
    return std::nullopt;
}

std::string describe(const Token& t) {
    if (t.lexeme.empty()) return "end of input";
    return "'" + t.lexeme + "'";
}

class Parser {
public:
    explicit Parser(SourceUnit& unit) : unit_(unit) {
        tokens_ = significant_tokens(tokenize(unit.source));
        eof_.kind = TokenKind::punctuation;
        auto end = static_cast<std::uint32_t>(unit.source.size());
        std::uint32_t line = 1, col = 1;
        for (char c : unit.source) {
            if (c == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        eof_.span = Span{end, end, line, col};
    }

    void run() {
        while (!at_end()) {
            const Token& t = peek();
            if (t.is(TokenKind::keyword, "pragma")) {
                unit_.pragmas.push_back(parse_pragma());
            } else if (t.is(TokenKind::keyword, "import")) {
                unit_.imports.push_back(parse_import());
            } else if (t.is(TokenKind::keyword, "contract") || t.is(TokenKind::keyword, "interface") ||
                       t.is(TokenKind::keyword, "library") || t.is(TokenKind::keyword, "abstract")) {
                unit_.contracts.push_back(parse_contract());
            } else {
                fail_expected({"pragma", "import", "contract", "interface", "library"});
            }
        }
    }

private:
    // --- token helpers -------------------------------------------------

    const Token& peek(std::size_t ahead = 0) const {
        return i_ + ahead < tokens_.size() ? tokens_[i_ + ahead] : eof_;
    }
    bool at_end() const { return i_ >= tokens_.size(); }
    const Token& previous() const { return tokens_[i_ - 1]; }

    bool at(TokenKind kind, std::string_view text, std::size_t ahead = 0) const {
        return peek(ahead).is(kind, text);
    }
    bool at_punct(std::string_view p, std::size_t ahead = 0) const {
        return at(TokenKind::punctuation, p, ahead);
    }
    bool at_op(std::string_view p, std::size_t ahead = 0) const { return at(TokenKind::op, p, ahead); }
    bool at_kw(std::string_view p, std::size_t ahead = 0) const {
        return at(TokenKind::keyword, p, ahead);
    }

    const Token& advance() {
        if (at_end()) fail("unexpected end of input");
        return tokens_[i_++];
    }

    bool accept_punct(std::string_view p) {
        if (!at_punct(p)) return false;
        ++i_;
        return true;
    }

    const Token& expect_punct(std::string_view p) {
        if (!at_punct(p)) fail_expected({std::string(p)});
        return tokens_[i_++];
    }
    const Token& expect_op(std::string_view p) {
        if (!at_op(p)) fail_expected({std::string(p)});
        return tokens_[i_++];
    }
    const Token& expect_kw(std::string_view p) {
        if (!at_kw(p)) fail_expected({std::string(p)});
        return tokens_[i_++];
    }
    const Token& expect_identifier() {
        if (peek().kind != TokenKind::identifier) fail_expected({"identifier"});
        return tokens_[i_++];
    }

    [[noreturn]] void fail(const std::string& message) const {
        const Token& t = peek();
        throw ParseError(t.span.start_line, t.span.start_col, message);
    }

    [[noreturn]] void fail_expected(std::vector<std::string> expected) const {
        const Token& t = peek();
        std::string msg = "expected ";
        for (std::size_t k = 0; k < expected.size(); ++k) {
            if (k) msg += k + 1 == expected.size() ? " or " : ", ";
            msg += "'" + expected[k] + "'";
        }
        msg += " but found " + describe(t);
        throw ParseError(t.span.start_line, t.span.start_col, msg, std::move(expected));
    }

    [[noreturn]] void unsupported(const std::string& what) const {
        fail("unsupported construct: " + what);
    }

    Span span_from(const Token& first) const { return join(first.span, previous().span); }

    std::string text(const Span& s) const { return std::string(s.slice(unit_.source)); }

    // --- top level -----------------------------------------------------

    PragmaDirective parse_pragma() {
        const Token& kw = advance();
        std::size_t body_start = i_;
        while (!at_punct(";")) {
            if (at_end()) fail_expected({";"});
            const Token& t = advance();
            if (t.lexeme == "ABIEncoderV2" || t.lexeme == "abicoder")
                unsupported("ABI encoder pragma");
        }
        PragmaDirective p;
        if (i_ > body_start) p.text = text(join(tokens_[body_start].span, previous().span));
        expect_punct(";");
        p.span = span_from(kw);
        return p;
    }

    ImportDirective parse_import() {
        const Token& kw = advance();
        ImportDirective d;
        while (!at_punct(";")) {
            if (at_end()) fail_expected({";"});
            const Token& t = advance();
            if (t.kind == TokenKind::string_literal && d.path.empty() && t.lexeme.size() >= 2)
                d.path = t.lexeme.substr(1, t.lexeme.size() - 2);
        }
        expect_punct(";");
        d.span = span_from(kw);
        return d;
    }

    ContractDefinition parse_contract() {
        const Token& first = peek();
        ContractDefinition c;
        if (at_kw("abstract")) {
            advance();
            c.abstract = true;
        }
        const Token& kw = advance();
        if (kw.lexeme == "contract") c.kind = ContractKind::contract;
        else if (kw.lexeme == "interface") c.kind = ContractKind::interface;
        else if (kw.lexeme == "library") c.kind = ContractKind::library;
        else fail_expected({"contract", "interface", "library"});
        c.name = expect_identifier().lexeme;
        if (at_kw("is")) {
            advance();
            do {
                Span base_span = expect_identifier().span;
                while (at_punct(".")) {
                    advance();
                    base_span = join(base_span, expect_identifier().span);
                }
                c.bases.push_back(text(base_span));
                if (at_punct("(")) {
                    advance();
                    if (!at_punct(")")) parse_call_arguments();
                    expect_punct(")");
                }
            } while (accept_punct(","));
        }
        expect_punct("{");
        while (!at_punct("}")) {
            if (at_end()) fail_expected({"}"});
            parse_contract_member(c);
        }
        expect_punct("}");
        c.span = span_from(first);
        return c;
    }

    void parse_contract_member(ContractDefinition& c) {
        const Token& t = peek();
        if (t.is(TokenKind::keyword, "function") || t.is(TokenKind::keyword, "constructor")) {
            if (t.lexeme == "function" && at_punct("(", 1) == false && peek(1).kind != TokenKind::identifier)
                fail_expected({"identifier", "("});
            c.functions.push_back(parse_function());
        } else if (t.is(TokenKind::keyword, "modifier")) {
            c.modifiers.push_back(parse_modifier());
        } else if (t.is(TokenKind::keyword, "event")) {
            c.events.push_back(parse_event());
        } else if (t.is(TokenKind::keyword, "struct")) {
            c.structs.push_back(parse_struct());
        } else if (t.is(TokenKind::keyword, "enum")) {
            c.enums.push_back(parse_enum());
        } else if (t.is(TokenKind::keyword, "using")) {
            c.usings.push_back(parse_using());
        } else if (t.is(TokenKind::keyword, "fallback") || t.is(TokenKind::keyword, "receive")) {
            unsupported("'" + t.lexeme + "' function (Solidity >= 0.6)");
        } else {
            c.state_variables.push_back(parse_state_variable());
        }
    }

    UsingDirective parse_using() {
        const Token& kw = advance();
        UsingDirective u;
        Span lib = expect_identifier().span;
        while (at_punct(".")) {
            advance();
            lib = join(lib, expect_identifier().span);
        }
        u.library = text(lib);
        expect_kw("for");
        if (at_op("*")) {
            advance();
            u.target = "*";
        } else {
            u.target = text(parse_type().span);
        }
        expect_punct(";");
        u.span = span_from(kw);
        return u;
    }

    StructDefinition parse_struct() {
        const Token& kw = advance();
        StructDefinition s;
        s.name = expect_identifier().lexeme;
        expect_punct("{");
        while (!at_punct("}")) {
            if (at_end()) fail_expected({"}"});
            const Token& first = peek();
            VariableDeclaration m;
            m.type = parse_type();
            const Token& name = expect_identifier();
            m.name = name.lexeme;
            m.name_span = name.span;
            m.span = span_from(first);
            expect_punct(";");
            s.members.push_back(std::move(m));
        }
        expect_punct("}");
        s.span = span_from(kw);
        return s;
    }

    EnumDefinition parse_enum() {
        const Token& kw = advance();
        EnumDefinition e;
        e.name = expect_identifier().lexeme;
        expect_punct("{");
        if (!at_punct("}")) {
            do {
                e.values.push_back(expect_identifier().lexeme);
            } while (accept_punct(","));
        }
        expect_punct("}");
        e.span = span_from(kw);
        return e;
    }

    EventDefinition parse_event() {
        const Token& kw = advance();
        EventDefinition e;
        e.name = expect_identifier().lexeme;
        e.params = parse_parameter_list(/*allow_indexed=*/true);
        if (at_kw("anonymous")) {
            advance();
            e.anonymous = true;
        }
        expect_punct(";");
        e.span = span_from(kw);
        return e;
    }

    ModifierDefinition parse_modifier() {
        const Token& kw = advance();
        ModifierDefinition m;
        m.name = expect_identifier().lexeme;
        if (at_punct("(")) m.params = parse_parameter_list(false);
        while (at_kw("virtual") || at_kw("override")) advance();
        m.body_span = skip_balanced_block();
        m.span = span_from(kw);
        return m;
    }

    // Consumes a `{ ... }` block without building nodes.
    Span skip_balanced_block() {
        const Token& open = expect_punct("{");
        int depth = 1;
        while (depth > 0) {
            if (at_end()) fail_expected({"}"});
            const Token& t = advance();
            if (t.kind == TokenKind::keyword && t.lexeme == "assembly") unsupported("inline assembly");
            if (t.kind == TokenKind::punctuation) {
                if (t.lexeme == "{") ++depth;
                else if (t.lexeme == "}") --depth;
            }
        }
        return span_from(open);
    }

    VariableDeclaration parse_state_variable() {
        const Token& first = peek();
        VariableDeclaration v;
        v.type = parse_type();
        while (true) {
            if (auto vis = visibility_of(peek())) {
                if (v.visibility) fail("duplicate visibility specifier");
                v.visibility = vis;
                advance();
            } else if (at_kw("constant") || at_kw("immutable")) {
                v.constant = true;
                advance();
            } else if (at_kw("override")) {
                advance();
            } else {
                break;
            }
        }
        const Token& name = expect_identifier();
        v.name = name.lexeme;
        v.name_span = name.span;
        if (at_op("=")) {
            advance();
            v.value = parse_expression();
        }
        expect_punct(";");
        v.span = span_from(first);
        return v;
    }

    FunctionDefinition parse_function() {
        const Token& kw = advance();
        FunctionDefinition f;
        if (kw.lexeme == "constructor") {
            f.kind = FunctionKind::constructor;
        } else if (peek().kind == TokenKind::identifier) {
            f.name = advance().lexeme;
        } else {
            f.kind = FunctionKind::fallback;
        }
        f.params = parse_parameter_list(false);
        while (true) {
            const Token& t = peek();
            if (auto vis = visibility_of(t)) {
                if (f.visibility) fail("duplicate visibility specifier");
                f.visibility = vis;
                f.visibility_span = t.span;
                advance();
            } else if (auto mut = mutability_of(t)) {
                if (f.state_mutability) fail("duplicate state mutability specifier");
                f.state_mutability = mut;
                f.state_mutability_span = t.span;
                advance();
            } else if (t.is(TokenKind::keyword, "virtual")) {
                advance();
            } else if (t.is(TokenKind::keyword, "override")) {
                advance();
                if (at_punct("(")) {
                    advance();
                    while (!at_punct(")")) advance();
                    advance();
                }
            } else if (t.is(TokenKind::keyword, "returns")) {
                advance();
                f.returns = parse_parameter_list(false);
            } else if (t.kind == TokenKind::identifier) {
                f.modifiers.push_back(parse_modifier_invocation());
            } else {
                break;
            }
        }
        f.header_span = span_from(kw);
        if (at_punct(";")) {
            advance();
        } else if (at_punct("{")) {
            f.body = parse_block();
        } else {
            fail_expected({";", "{"});
        }
        f.span = span_from(kw);
        return f;
    }

    ModifierInvocation parse_modifier_invocation() {
        const Token& name = advance();
        ModifierInvocation m;
        m.name = name.lexeme;
        if (at_punct("(")) {
            advance();
            if (!at_punct(")")) m.arguments = parse_call_arguments();
            expect_punct(")");
        }
        m.span = span_from(name);
        return m;
    }

    std::vector<VariableDeclaration> parse_parameter_list(bool allow_indexed) {
        expect_punct("(");
        std::vector<VariableDeclaration> out;
        if (!at_punct(")")) {
            do {
                const Token& first = peek();
                VariableDeclaration v;
                v.type = parse_type();
                if (auto loc = location_of(peek())) {
                    v.location = loc;
                    v.location_span = peek().span;
                    advance();
                }
                if (allow_indexed && at_kw("indexed")) {
                    v.indexed = true;
                    advance();
                }
                if (peek().kind == TokenKind::identifier) {
                    const Token& name = advance();
                    v.name = name.lexeme;
                    v.name_span = name.span;
                }
                v.span = span_from(first);
                out.push_back(std::move(v));
            } while (accept_punct(","));
        }
        expect_punct(")");
        return out;
    }

    // --- types ----------------------------------------------------------

    TypeName parse_type() {
        const Token& first = peek();
        TypeName type;
        if (at_kw("mapping")) {
            advance();
            expect_punct("(");
            TypeName key = parse_type();
            expect_op("=>");
            TypeName value = parse_type();
            expect_punct(")");
            type.kind = TypeName::Kind::mapping;
            type.text = "mapping";
            type.args.push_back(std::move(key));
            type.args.push_back(std::move(value));
            type.span = span_from(first);
            type.keyword_span = type.span;
        } else if (first.kind == TokenKind::keyword && is_elementary_type_name(first.lexeme)) {
            advance();
            type.kind = TypeName::Kind::elementary;
            type.text = first.lexeme;
            type.keyword_span = first.span;
            if (first.lexeme == "address" && at_kw("payable")) {
                advance();
                type.address_payable = true;
            }
            type.span = span_from(first);
        } else if (first.kind == TokenKind::identifier) {
            advance();
            while (at_punct(".") && peek(1).kind == TokenKind::identifier) {
                advance();
                advance();
            }
            type.kind = TypeName::Kind::user_defined;
            type.span = span_from(first);
            type.keyword_span = type.span;
            type.text = text(type.span);
        } else if (at_kw("function")) {
            unsupported("function type");
        } else if (at_kw("var")) {
            unsupported("'var' declaration");
        } else {
            fail_expected({"type name"});
        }
        while (at_punct("[")) {
            advance();
            if (!at_punct("]")) parse_expression();
            expect_punct("]");
            TypeName array;
            array.kind = TypeName::Kind::array;
            array.span = span_from(first);
            array.keyword_span = array.span;
            array.text = text(array.span);
            array.args.push_back(std::move(type));
            type = std::move(array);
        }
        return type;
    }

    // Skips a type starting at token index `k` without consuming; returns the
    // index after it, or npos.
    std::size_t skip_type(std::size_t k) const {
        auto tok = [&](std::size_t idx) -> const Token& { return idx < tokens_.size() ? tokens_[idx] : eof_; };
        constexpr auto npos = static_cast<std::size_t>(-1);
        const Token& t = tok(k);
        if (t.is(TokenKind::keyword, "mapping")) {
            if (!tok(k + 1).is(TokenKind::punctuation, "(")) return npos;
            k = skip_balanced(k + 1, "(", ")");
            if (k == npos) return npos;
        } else if (t.kind == TokenKind::keyword && is_elementary_type_name(t.lexeme)) {
            ++k;
            if (t.lexeme == "address" && tok(k).is(TokenKind::keyword, "payable")) ++k;
        } else if (t.kind == TokenKind::identifier) {
            ++k;
            while (tok(k).is(TokenKind::punctuation, ".") && tok(k + 1).kind == TokenKind::identifier) k += 2;
        } else {
            return npos;
        }
        while (tok(k).is(TokenKind::punctuation, "[")) {
            k = skip_balanced(k, "[", "]");
            if (k == npos) return npos;
        }
        return k;
    }

    std::size_t skip_balanced(std::size_t k, std::string_view open, std::string_view close) const {
        int depth = 0;
        for (; k < tokens_.size(); ++k) {
            const Token& t = tokens_[k];
            if (t.kind != TokenKind::punctuation) continue;
            if (t.lexeme == open) ++depth;
            else if (t.lexeme == close && --depth == 0) return k + 1;
        }
        return static_cast<std::size_t>(-1);
    }

    bool looks_like_declaration() const {
        std::size_t k = skip_type(i_);
        if (k == static_cast<std::size_t>(-1)) return false;
        const Token& next = k < tokens_.size() ? tokens_[k] : eof_;
        return next.kind == TokenKind::identifier || location_of(next).has_value();
    }

    // --- statements -----------------------------------------------------

    Statement parse_block() {
        const Token& open = expect_punct("{");
        Statement b;
        b.kind = StmtKind::block;
        while (!at_punct("}")) {
            if (at_end()) fail_expected({"}"});
            b.statements.push_back(parse_statement());
        }
        expect_punct("}");
        b.span = span_from(open);
        return b;
    }

    Statement parse_statement() {
        const Token& first = peek();
        if (at_punct("{")) return parse_block();
        if (first.kind == TokenKind::keyword) {
            const auto& kw = first.lexeme;
            if (kw == "if") return parse_if();
            if (kw == "for") return parse_for();
            if (kw == "while") return parse_while();
            if (kw == "return") return parse_return();
            if (kw == "emit") return parse_simple(StmtKind::emit);
            if (kw == "delete") return parse_simple(StmtKind::delete_);
            if (kw == "break" || kw == "continue") {
                advance();
                expect_punct(";");
                Statement s;
                s.kind = kw == "break" ? StmtKind::break_ : StmtKind::continue_;
                s.span = span_from(first);
                return s;
            }
            if (kw == "assembly") unsupported("inline assembly");
            if (kw == "do") unsupported("do-while statement");
            if (kw == "throw") unsupported("'throw' statement");
            if (kw == "try" || kw == "unchecked") unsupported("'" + kw + "' (Solidity >= 0.6)");
            if (kw == "var") unsupported("'var' declaration");
        }
        if (looks_like_declaration()) return parse_variable_statement();
        Statement s;
        s.kind = StmtKind::expression;
        s.expressions.push_back(parse_expression());
        expect_punct(";");
        s.span = span_from(first);
        return s;
    }

    Statement parse_variable_statement() {
        const Token& first = peek();
        Statement s;
        s.kind = StmtKind::variable_declaration;
        VariableDeclaration v;
        v.type = parse_type();
        if (auto loc = location_of(peek())) {
            v.location = loc;
            v.location_span = peek().span;
            advance();
        }
        const Token& name = expect_identifier();
        v.name = name.lexeme;
        v.name_span = name.span;
        v.span = span_from(first);
        s.declarations.push_back(std::move(v));
        if (at_op("=")) {
            advance();
            s.expressions.push_back(parse_expression());
        }
        expect_punct(";");
        s.span = span_from(first);
        return s;
    }

    Statement parse_simple(StmtKind kind) {
        const Token& kw = advance();
        Statement s;
        s.kind = kind;
        s.expressions.push_back(parse_expression());
        expect_punct(";");
        s.span = span_from(kw);
        return s;
    }

    Statement parse_return() {
        const Token& kw = advance();
        Statement s;
        s.kind = StmtKind::return_;
        if (!at_punct(";")) s.expressions.push_back(parse_expression());
        expect_punct(";");
        s.span = span_from(kw);
        return s;
    }

    Statement parse_if() {
        const Token& kw = advance();
        Statement s;
        s.kind = StmtKind::if_;
        expect_punct("(");
        s.condition = parse_expression();
        s.condition_span = s.condition->outer_span;
        expect_punct(")");
        s.statements.push_back(parse_statement());
        if (at_kw("else")) {
            advance();
            s.statements.push_back(parse_statement());
        }
        s.span = span_from(kw);
        return s;
    }

    Statement parse_while() {
        const Token& kw = advance();
        Statement s;
        s.kind = StmtKind::while_;
        expect_punct("(");
        s.condition = parse_expression();
        s.condition_span = s.condition->outer_span;
        expect_punct(")");
        s.statements.push_back(parse_statement());
        s.span = span_from(kw);
        return s;
    }

    Statement parse_for() {
        const Token& kw = advance();
        Statement s;
        s.kind = StmtKind::for_;
        expect_punct("(");
        if (!accept_punct(";")) {
            if (looks_like_declaration()) {
                s.init.push_back(parse_variable_statement());
            } else {
                const Token& first = peek();
                Statement init;
                init.kind = StmtKind::expression;
                init.expressions.push_back(parse_expression());
                expect_punct(";");
                init.span = span_from(first);
                s.init.push_back(std::move(init));
            }
        }
        if (!at_punct(";")) {
            s.condition = parse_expression();
            s.condition_span = s.condition->outer_span;
        }
        expect_punct(";");
        if (!at_punct(")")) s.expressions.push_back(parse_expression());
        expect_punct(")");
        s.statements.push_back(parse_statement());
        s.span = span_from(kw);
        return s;
    }

    // --- expressions ----------------------------------------------------

    Expression parse_expression() { return parse_assignment(); }

    Expression parse_assignment() {
        Expression lhs = parse_conditional();
        if (is_assignment_op(peek())) {
            const Token& op = advance();
            Expression rhs = parse_assignment();
            Expression e;
            e.kind = ExprKind::assignment;
            e.op = op.lexeme;
            e.operator_span = op.span;
            e.span = join(lhs.outer_span, rhs.outer_span);
            e.operands.push_back(std::move(lhs));
            e.operands.push_back(std::move(rhs));
            e.outer_span = e.span;
            return e;
        }
        return lhs;
    }

    Expression parse_conditional() {
        Expression cond = parse_binary(1);
        if (!at_op("?")) return cond;
        advance();
        Expression then_branch = parse_assignment();
        expect_op(":");
        Expression else_branch = parse_assignment();
        Expression e;
        e.kind = ExprKind::conditional;
        e.span = join(cond.outer_span, else_branch.outer_span);
        e.outer_span = e.span;
        e.operands.push_back(std::move(cond));
        e.operands.push_back(std::move(then_branch));
        e.operands.push_back(std::move(else_branch));
        return e;
    }

    // Left-associative precedence climbing.
    Expression parse_binary(int min_precedence) {
        Expression lhs = parse_unary();
        while (true) {
            int prec = binary_precedence(peek());
            if (prec < min_precedence) break;
            const Token& op = advance();
            Expression rhs = parse_binary(prec + 1);
            Expression e;
            e.kind = ExprKind::binary_op;
            e.op = op.lexeme;
            e.operator_span = op.span;
            e.span = join(lhs.outer_span, rhs.outer_span);
            e.outer_span = e.span;
            e.operands.push_back(std::move(lhs));
            e.operands.push_back(std::move(rhs));
            lhs = std::move(e);
        }
        return lhs;
    }

    Expression parse_unary() {
        const Token& t = peek();
        if (t.kind == TokenKind::op &&
            (t.lexeme == "!" || t.lexeme == "~" || t.lexeme == "-" || t.lexeme == "+" || t.lexeme == "++" ||
             t.lexeme == "--")) {
            advance();
            Expression operand = parse_unary();
            Expression e;
            e.kind = ExprKind::unary_op;
            e.op = t.lexeme;
            e.prefix = true;
            e.operator_span = t.span;
            e.span = join(t.span, operand.outer_span);
            e.outer_span = e.span;
            e.operands.push_back(std::move(operand));
            return e;
        }
        if (t.is(TokenKind::keyword, "delete")) unsupported("'delete' inside an expression");
        return parse_postfix(parse_primary());
    }

    Expression parse_postfix(Expression e) {
        while (true) {
            if (at_punct(".")) {
                advance();
                const Token& member = peek();
                if (member.kind != TokenKind::identifier && member.kind != TokenKind::keyword &&
                    member.kind != TokenKind::unit_suffix)
                    fail_expected({"member name"});
                advance();
                Expression m;
                m.kind = ExprKind::member_access;
                m.member = member.lexeme;
                m.text = path_of(e).empty() ? std::string() : path_of(e) + "." + member.lexeme;
                m.span = join(e.outer_span, member.span);
                m.outer_span = m.span;
                m.operands.push_back(std::move(e));
                e = std::move(m);
            } else if (at_punct("[")) {
                advance();
                Expression ix;
                ix.kind = ExprKind::index_access;
                if (!at_punct("]")) ix.operands.push_back(parse_expression());
                const Token& close = expect_punct("]");
                ix.span = join(e.outer_span, close.span);
                ix.outer_span = ix.span;
                ix.operands.insert(ix.operands.begin(), std::move(e));
                e = std::move(ix);
            } else if (at_punct("(")) {
                advance();
                std::vector<Expression> args;
                if (!at_punct(")")) args = parse_call_arguments();
                const Token& close = expect_punct(")");
                Expression call;
                call.kind = ExprKind::function_call;
                call.text = callee_text(e);
                call.span = join(e.outer_span, close.span);
                call.outer_span = call.span;
                call.operands.push_back(std::move(e));
                for (auto& a : args) call.operands.push_back(std::move(a));
                e = std::move(call);
            } else if (at_op("++") || at_op("--")) {
                const Token& op = advance();
                Expression u;
                u.kind = ExprKind::unary_op;
                u.op = op.lexeme;
                u.prefix = false;
                u.operator_span = op.span;
                u.span = join(e.outer_span, op.span);
                u.outer_span = u.span;
                u.operands.push_back(std::move(e));
                e = std::move(u);
            } else if (at_punct("{")) {
                unsupported("call options / named arguments");
            } else {
                return e;
            }
        }
    }

    std::vector<Expression> parse_call_arguments() {
        std::vector<Expression> args;
        if (at_punct("{")) unsupported("named call arguments");
        do {
            args.push_back(parse_expression());
        } while (accept_punct(","));
        return args;
    }

    static std::string path_of(const Expression& e) {
        if (e.parenthesized) return {};
        if (e.kind == ExprKind::identifier) return e.text;
        if (e.kind == ExprKind::member_access) return e.text;
        return {};
    }

    std::string callee_text(const Expression& callee) const {
        auto p = path_of(callee);
        if (!p.empty()) return p;
        if (callee.kind == ExprKind::elementary_type_name || callee.kind == ExprKind::new_expression)
            return callee.text;
        return text(callee.outer_span);
    }

    Expression parse_primary() {
        const Token& t = peek();
        Expression e;
        switch (t.kind) {
        case TokenKind::identifier:
            advance();
            e.kind = ExprKind::identifier;
            e.text = t.lexeme;
            e.span = t.span;
            break;
        case TokenKind::number_literal:
            advance();
            e.kind = ExprKind::number_literal;
            e.text = t.lexeme;
            e.span = t.span;
            if (peek().kind == TokenKind::unit_suffix) {
                const Token& unit = advance();
                e.unit = unit.lexeme;
                e.unit_span = unit.span;
                e.span = join(t.span, unit.span);
            }
            break;
        case TokenKind::string_literal:
            advance();
            e.kind = ExprKind::string_literal;
            e.text = t.lexeme;
            e.span = t.span;
            while (peek().kind == TokenKind::string_literal) e.span = join(e.span, advance().span);
            break;
        case TokenKind::keyword:
            if (t.lexeme == "true" || t.lexeme == "false") {
                advance();
                e.kind = ExprKind::bool_literal;
                e.text = t.lexeme;
                e.span = t.span;
            } else if (is_elementary_type_name(t.lexeme)) {
                advance();
                e.kind = ExprKind::elementary_type_name;
                e.text = t.lexeme;
                e.span = t.span;
                if (at_punct("[") && at_punct("]", 1)) {
                    advance();
                    e.span = join(e.span, advance().span);
                    e.text += "[]";
                }
            } else if (t.lexeme == "new") {
                advance();
                TypeName type = parse_type();
                e.kind = ExprKind::new_expression;
                e.text = text(type.span);
                e.span = join(t.span, type.span);
            } else if (t.lexeme == "payable" && at_punct("(", 1)) {
                advance();
                e.kind = ExprKind::identifier;
                e.text = t.lexeme;
                e.span = t.span;
            } else {
                if (t.lexeme == "type") unsupported("type() expression (Solidity >= 0.6)");
                fail_expected({"expression"});
            }
            break;
        case TokenKind::punctuation:
            if (t.lexeme == "(") return parse_parenthesized();
            if (t.lexeme == "[") {
                advance();
                e.kind = ExprKind::tuple;
                if (!at_punct("]")) {
                    do {
                        e.operands.push_back(parse_expression());
                    } while (accept_punct(","));
                }
                expect_punct("]");
                e.span = span_from(t);
                break;
            }
            fail_expected({"expression"});
        default:
            fail_expected({"expression"});
        }
        e.outer_span = e.span;
        return e;
    }

    Expression parse_parenthesized() {
        const Token& open = advance();
        if (at_punct(")")) {
            advance();
            Expression empty;
            empty.kind = ExprKind::tuple;
            empty.span = span_from(open);
            empty.outer_span = empty.span;
            return empty;
        }
        Expression first = parse_expression();
        if (at_punct(")")) {
            advance();
            first.parenthesized = true;
            first.outer_span = span_from(open);
            return first;
        }
        Expression tuple;
        tuple.kind = ExprKind::tuple;
        tuple.operands.push_back(std::move(first));
        while (accept_punct(",")) {
            if (at_punct(",") || at_punct(")")) unsupported("tuple with empty components");
            tuple.operands.push_back(parse_expression());
        }
        expect_punct(")");
        tuple.span = span_from(open);
        tuple.outer_span = tuple.span;
        return tuple;
    }

    SourceUnit& unit_;
    std::vector<Token> tokens_;
    Token eof_;
    std::size_t i_ = 0;
};

} // namespace

SourceUnit parse(std::string source) {
    SourceUnit unit;
    unit.source = std::move(source);
    Parser(unit).run();
    return unit;
}

} // namespace solmut
