#include "oracles.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <regex>
#include <set>
#include <stdexcept>

namespace oracle {

using solmut::OperatorCode;

namespace {

const char* const kPunct[] = {
    "<<=", ">>=", "**", "++", "--", "&&", "||", "==", "!=", "<=", ">=", "=>", "+=", "-=", "*=", "/=", "%=",
    "&=", "|=", "^=", "<<", ">>",
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$'; }
bool ident_char(char c) { return ident_start(c) || std::isdigit(static_cast<unsigned char>(c)); }

const std::set<std::string> kKeywords = {
    "pragma", "import", "contract", "interface", "library", "is", "using", "for", "struct", "enum", "event",
    "modifier", "function", "constructor", "returns", "return", "if", "else", "while", "do", "break", "continue",
    "emit", "delete", "new", "true", "false", "public", "private", "internal", "external", "view", "pure",
    "payable", "constant", "memory", "storage", "calldata", "mapping", "indexed", "anonymous", "abstract",
    "wei", "szabo", "finney", "ether", "seconds", "minutes", "hours", "days", "weeks", "this", "super", "now",
    "address", "bool", "string", "bytes", "byte", "var",
};

const std::regex kSizedType(R"((u?int|bytes|u?fixed)\d+(x\d+)?)");

bool is_type_keyword(const std::string& t) {
    return t == "uint" || t == "int" || t == "address" || t == "bool" || t == "string" || t == "bytes" ||
           t == "byte" || t == "fixed" || t == "ufixed" || std::regex_match(t, kSizedType);
}

bool is_keyword(const std::string& t) { return kKeywords.count(t) || is_type_keyword(t); }

// A token after which a following `-`/`+`/`&`... must be binary.
bool ends_operand(const Token& t) {
    if (t.kind == Token::number || t.kind == Token::string) return true;
    if (t.kind == Token::punct) return t.text == ")" || t.text == "]";
    static const std::set<std::string> operand_words = {"true", "false", "this", "super", "now", "wei", "szabo",
                                                        "finney", "ether", "seconds", "minutes", "hours", "days",
                                                        "weeks"};
    return !is_keyword(t.text) || operand_words.count(t.text) || is_type_keyword(t.text);
}

bool is_any(const std::string& t, std::initializer_list<const char*> set) {
    for (const char* s : set)
        if (t == s) return true;
    return false;
}

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

struct Walk {
    std::string_view source;
    std::map<OperatorCode, std::size_t>& counts;

    std::string text(const solmut::Span& s) const { return trim(s.slice(source)); }

    void function(const solmut::FunctionDefinition& f) {
        if (f.body) statement(*f.body, f, false);
    }

    void statement(const solmut::Statement& s, const solmut::FunctionDefinition& f, bool for_init) {
        using K = solmut::StmtKind;
        switch (s.kind) {
        case K::expression:
            if (!for_init) ++counts[OperatorCode::SDL];
            break;
        case K::emit:
        case K::delete_:
        case K::break_:
        case K::continue_: ++counts[OperatorCode::SDL]; break;
        case K::return_:
            if (f.returns.empty()) ++counts[OperatorCode::SDL];
            if (!s.expressions.empty()) rvr(s, f);
            break;
        case K::if_:
        case K::while_:
        case K::for_:
            if (s.condition_span) {
                auto cond = text(*s.condition_span);
                counts[OperatorCode::CSC] += (cond == "true" || cond == "false") ? 1 : 2;
            }
            break;
        default: break;
        }
        for (const auto& c : s.init) statement(c, f, true);
        for (const auto& c : s.statements) statement(c, f, false);
    }

    void rvr(const solmut::Statement& s, const solmut::FunctionDefinition& f) {
        // Return expression text: everything between `return` and `;`.
        auto whole = s.span.slice(source);
        auto value = trim(whole.substr(6, whole.rfind(';') - 6));
        std::vector<std::string> candidates{"0"};
        if (f.returns.size() == 1) {
            const auto& t = f.returns[0].type.text;
            if (t == "bool") candidates = {"true", "false"};
            else if (t == "address") candidates = {"address(0)"};
            else if (t.rfind("uint", 0) == 0 || t.rfind("int", 0) == 0 || t.rfind("fixed", 0) == 0 ||
                     t.rfind("ufixed", 0) == 0)
                candidates = {"0", "1"};
        }
        for (const auto& c : candidates)
            if (c != value) ++counts[OperatorCode::RVR];
    }
};

} // namespace

std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> raw;
    std::size_t i = 0;
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
        if (src.substr(i, 2) == "//") { i = src.find('\n', i); if (i == std::string_view::npos) break; continue; }
        if (src.substr(i, 2) == "/*") { i = src.find("*/", i + 2) + 2; continue; }
        std::size_t start = i;
        if (c == '"' || c == '\'') {
            ++i;
            while (i < src.size() && src[i] != c) i += src[i] == '\\' ? 2 : 1;
            ++i;
            raw.push_back({Token::string, std::string(src.substr(start, i - start)), start});
        } else if (ident_start(c)) {
            while (i < src.size() && ident_char(src[i])) ++i;
            raw.push_back({Token::ident, std::string(src.substr(start, i - start)), start});
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '.')) ++i;
            raw.push_back({Token::number, std::string(src.substr(start, i - start)), start});
        } else {
            std::size_t len = 1;
            for (const char* p : kPunct) {
                std::string_view pv(p);
                if (src.substr(i, pv.size()) == pv) { len = pv.size(); break; }
            }
            i += len;
            raw.push_back({Token::punct, std::string(src.substr(start, len)), start});
        }
    }

    std::vector<Token> out;
    for (std::size_t k = 0; k < raw.size(); ++k) {
        if (raw[k].text == "pragma") {
            while (k < raw.size() && raw[k].text != ";") ++k;
            continue;
        }
        out.push_back(raw[k]);
        if (raw[k].text == "modifier") {
            while (++k < raw.size() && raw[k].text != "{") out.push_back(raw[k]);
            int depth = 0;
            for (; k < raw.size(); ++k) {
                if (raw[k].text == "{") ++depth;
                if (raw[k].text == "}" && --depth == 0) break;
            }
        }
    }
    return out;
}

std::map<OperatorCode, std::size_t> point_counts(std::string_view source, const solmut::SourceUnit& unit) {
    std::map<OperatorCode, std::size_t> n;
    for (auto code : solmut::kAllOperators) n[code] = 0;
    auto toks = tokenize(source);
    auto at = [&](std::ptrdiff_t k) -> const std::string& {
        static const std::string none;
        return k >= 0 && k < static_cast<std::ptrdiff_t>(toks.size()) ? toks[k].text : none;
    };
    auto binary_at = [&](std::ptrdiff_t k) { return k > 0 && ends_operand(toks[k - 1]); };

    bool in_header = false; // between `function`/`constructor` and its body or ';'
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(toks.size()); ++k) {
        const auto& t = toks[k];
        const auto& s = t.text;
        const auto& prev = at(k - 1);
        const auto& next = at(k + 1);
        if (t.kind == Token::ident && (s == "function" || s == "constructor")) in_header = true;
        if (in_header && (s == "{" || s == ";")) in_header = false;

        if (t.kind == Token::punct) {
            if (is_any(s, {"+", "-", "*", "/", "%"}) && binary_at(k)) n[OperatorCode::AORB] += 4;
            if (is_any(s, {"++", "--"})) n[OperatorCode::AORS] += 1;
            if (is_any(s, {"<", ">", "<=", ">=", "==", "!="})) n[OperatorCode::ROR] += 7;
            if (is_any(s, {"&&", "||"})) n[OperatorCode::COR] += 1;
            if (is_any(s, {"&", "|", "^"}) && binary_at(k)) n[OperatorCode::LOR] += 2;
            if (is_any(s, {"+=", "-=", "*=", "/=", "%="})) n[OperatorCode::ASR] += 4;
            if (is_any(s, {"&=", "|=", "^="})) n[OperatorCode::ASR] += 2;
            continue;
        }
        if (t.kind != Token::ident) continue;

        if (s == "view") n[OperatorCode::FSC] += 1;
        if (in_header && is_any(s, {"public", "external", "internal", "private"})) n[OperatorCode::FVC] += 3;
        if (is_any(s, {"memory", "storage", "calldata"})) n[OperatorCode::DLR] += 1;
        if (in_header && s == "payable" && next != "(") n[OperatorCode::PKD] += 1;
        if (s == "delete") n[OperatorCode::DKD] += 1;
        if ((s == "addmod" || s == "mulmod") && next == "(") n[OperatorCode::MFR] += 1;
        if (k > 0 && toks[k - 1].kind == Token::number) {
            if (is_any(s, {"wei", "szabo", "finney", "ether"})) n[OperatorCode::EUR] += 3;
            if (is_any(s, {"seconds", "minutes", "hours", "days", "weeks"})) n[OperatorCode::TUR] += 4;
        }

        // Globals: `now`, or `<obj> . <member>` not itself a member of something.
        if (prev != ".") {
            std::string path = s;
            if (next == "." && k + 2 < static_cast<std::ptrdiff_t>(toks.size())) path += "." + at(k + 2);
            if (s == "now" || is_any(path, {"block.timestamp", "block.number", "msg.value", "block.difficulty",
                                            "block.gaslimit"}))
                n[OperatorCode::GVC] += 2;
            if (is_any(path, {"msg.sender", "tx.origin", "block.coinbase"})) n[OperatorCode::AVR] += 2;
        }

        // require/assert used as a statement.
        if ((s == "require" || s == "assert") && next == "(" && is_any(prev, {";", "{", "}", ")", "else"})) {
            std::ptrdiff_t j = k + 1;
            int depth = 0;
            std::ptrdiff_t first_arg_end = -1;
            for (; j < static_cast<std::ptrdiff_t>(toks.size()); ++j) {
                if (at(j) == "(") ++depth;
                if (at(j) == ")" && --depth == 0) break;
                if (at(j) == "," && depth == 1 && first_arg_end < 0) first_arg_end = j;
            }
            if (first_arg_end < 0) first_arg_end = j;
            if (at(j + 1) == ";") {
                bool already_false = first_arg_end == k + 3 && at(k + 2) == "false";
                bool req = s == "require";
                n[req ? OperatorCode::RSD : OperatorCode::ASD] += 1;
                if (!already_false) n[req ? OperatorCode::RSC : OperatorCode::ASC] += 1;
            }
        }

        // VTR over declaration type keywords.
        if (is_type_keyword(s) && next != "(" && prev != "new" && prev != "for") {
            std::smatch m;
            static const std::regex sized(R"((u?int|bytes)(\d*))");
            if (std::regex_match(s, m, sized)) {
                int bits = m[2].length() ? std::stoi(m[2]) : 0;
                if (m[1] == "uint") n[OperatorCode::VTR] += (bits == 0 || bits > 8) ? 2 : 1;
                else if (m[1] == "int") n[OperatorCode::VTR] += 1;
                else if (m[1] == "bytes" && bits > 8) n[OperatorCode::VTR] += 1;
            }
        }

        // AOI: identifier reads next to arithmetic/relational operators, or
        // forming a whole assignment right-hand side / initializer / return value.
        if (!is_keyword(s) && prev != "." && !is_any(next, {".", "(", "[", "++", "--"})) {
            static const std::initializer_list<const char*> arith_rel = {"+", "-", "*", "/", "%", "**", "<",
                                                                          ">", "<=", ">=", "==", "!="};
            bool prev_binary = is_any(prev, arith_rel) && binary_at(k - 1);
            bool next_binary = is_any(next, arith_rel) && !is_any(prev, {"-", "+", "!", "~", "++", "--"});
            bool whole_rhs = next == ";" && is_any(prev, {"=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=",
                                                          "<<=", ">>=", "return"});
            if (prev_binary || next_binary || whole_rhs) n[OperatorCode::AOI] += 3;
        }
    }

    Walk walk{source, n};
    for (const auto& c : unit.contracts)
        for (const auto& f : c.functions) walk.function(f);
    return n;
}

double wilcoxon_enumerate(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("length mismatch");
    std::vector<double> d;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) d.push_back(a[i] - b[i]);
    std::size_t n = d.size();
    if (n > 24) throw std::invalid_argument("too many pairs to enumerate");

    // Doubled midranks of |d|: tied values share the average of their positions.
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto x, auto y) { return std::fabs(d[x]) < std::fabs(d[y]); });
    std::vector<long> rank2(n);
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && std::fabs(d[order[j]]) == std::fabs(d[order[i]])) ++j;
        for (std::size_t k = i; k < j; ++k) rank2[order[k]] = static_cast<long>(i + 1 + j);
        i = j;
    }
    long observed = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (d[i] > 0) observed += rank2[i];

    std::uint64_t lo = 0, hi = 0, total = std::uint64_t{1} << n;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        long w = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) w += rank2[i];
        lo += w <= observed;
        hi += w >= observed;
    }
    return std::min(1.0, 2.0 * static_cast<double>(std::min(lo, hi)) / static_cast<double>(total));
}

std::size_t killed_rows(const std::vector<std::vector<std::string>>& cells) {
    std::size_t k = 0;
    for (const auto& row : cells)
        k += std::any_of(row.begin(), row.end(), [](const std::string& c) { return c == "fail" || c == "timeout"; });
    return k;
}

} // namespace oracle
