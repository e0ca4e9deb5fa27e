#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "example_cases.hpp"
#include "solmut/errors.hpp"
#include "solmut/operators.hpp"
#include "solmut/parser.hpp"
#include "solmut/pipeline.hpp"

using namespace solmut;
using testsupport::read_text;

namespace {

std::string wrap(const std::string& body) { return "contract T {\n" + body + "\n}\n"; }

std::vector<MutationPoint> points(const std::string& source, OperatorSet ops, std::uint64_t seed = 0) {
    return enumerate(parse(source), ops, seed);
}

std::vector<std::string> replacements(const std::vector<MutationPoint>& pts) {
    std::vector<std::string> out;
    for (const auto& p : pts) out.push_back(p.replacement_text);
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t count_op(const std::vector<MutationPoint>& pts, OperatorCode op) {
    return static_cast<std::size_t>(std::count_if(pts.begin(), pts.end(), [&](const auto& p) { return p.op == op; }));
}

} // namespace

TEST(OperatorCodes, RoundTripAndOrder) {
    EXPECT_EQ(kAllOperators.size(), 25u);
    for (auto code : kAllOperators) EXPECT_EQ(parse_operator_code(code_name(code)), code);
    EXPECT_EQ(std::count_if(kAllOperators.begin(), kAllOperators.end(), is_general), 10);
    EXPECT_EQ(parse_operator_list(" ROR, AVR "), (OperatorSet{OperatorCode::ROR, OperatorCode::AVR}));
    EXPECT_THROW(parse_operator_list("ROR,XYZ"), Error);
}

TEST(Aor, FscSnippetHasFourPointsPerOperator) {
    auto pts = points(wrap("function func(uint x, uint y) view returns (uint){ return x * (y + 42); }"),
                      {OperatorCode::AORB});
    ASSERT_EQ(pts.size(), 8u);
    EXPECT_EQ(replacements({pts.begin(), pts.begin() + 4}), (std::vector<std::string>{"%", "+", "-", "/"}));
    EXPECT_EQ(replacements({pts.begin() + 4, pts.end()}), (std::vector<std::string>{"%", "*", "-", "/"}));
}

TEST(Aor, ShortcutSwapKeepsPosition) {
    auto src = wrap("function f(uint i) { i++; --i; }");
    auto pts = points(src, {OperatorCode::AORS});
    ASSERT_EQ(pts.size(), 2u);
    EXPECT_EQ(apply_edit(src, pts[0]).find("i--;") != std::string::npos, true);
    EXPECT_EQ(apply_edit(src, pts[1]).find("++i;") != std::string::npos, true);
}

TEST(Aoi, ReturnOfIdentifierGivesThreeInsertions) {
    auto pts = points(wrap("function f(uint a) returns (uint) { return a; }"), {OperatorCode::AOI});
    EXPECT_EQ(replacements(pts), (std::vector<std::string>{"(-a)", "++a", "--a"}));
}

TEST(Aoi, ComparisonGivesThreePerIdentifier) {
    auto pts = points(wrap("function f(uint length) { for (uint256 i=0; i<length; i++){} }"), {OperatorCode::AOI});
    EXPECT_EQ(pts.size(), 6u);
}

TEST(Ror, RequireConditionGivesSevenPoints) {
    auto pts = points(wrap("function f() payable { require(msg.value%2 == 0, \"Even value required.\"); }"),
                      {OperatorCode::ROR});
    ASSERT_EQ(pts.size(), 7u);
    auto r = replacements(pts);
    EXPECT_TRUE(std::count(r.begin(), r.end(), "true") == 1 && std::count(r.begin(), r.end(), "false") == 1);
    for (const auto& p : pts)
        if (p.replacement_text == "true") EXPECT_EQ(p.original_text, "msg.value%2 == 0");
}

TEST(Cor, OnePointPerSite) {
    EXPECT_EQ(points(wrap("function f(bool a, bool b) returns (bool) { return a && b; }"), {OperatorCode::COR}).size(),
              1u);
    EXPECT_EQ(
        points(wrap("function f(bool a, bool b, bool c) returns (bool) { return a && b || c; }"), {OperatorCode::COR})
            .size(),
        2u);
}

TEST(Lor, BitwiseFixtureHasThreeSites) {
    auto src = read_text(testsupport::fixture_dir() / "corpus/bitwise.sol");
    EXPECT_EQ(points(src, {OperatorCode::LOR}).size(), 6u);
}

TEST(Asr, ArithmeticGroupOnly) {
    auto pts = points(wrap("mapping(address => uint) deposits;\n"
                           "function deposit() payable{ deposits[msg.sender] += msg.value; }"),
                      {OperatorCode::ASR});
    EXPECT_EQ(replacements(pts), (std::vector<std::string>{"%=", "*=", "-=", "/="}));
    auto bits = points(wrap("function f(uint a) { a &= 1; }"), {OperatorCode::ASR});
    EXPECT_EQ(replacements(bits), (std::vector<std::string>{"^=", "|="}));
}

TEST(Sdl, SkipsDeclarationsAndValueReturns) {
    auto src = wrap("uint s;\nfunction f(uint a) returns (uint) { uint b = a; s = b; return b; }\n"
                    "function g() { s = 1; return; }");
    auto pts = points(src, {OperatorCode::SDL});
    ASSERT_EQ(pts.size(), 3u);
    EXPECT_EQ(pts[0].original_text, "s = b;");
    EXPECT_EQ(pts[0].replacement_text, "/*s = b;*/");
    EXPECT_TRUE(points(wrap("function f() {}"), {OperatorCode::SDL}).empty());
}

TEST(Rvr, ReplacementsFollowDeclaredType) {
    EXPECT_EQ(replacements(points(wrap("function f(uint a) returns (uint) { return a; }"), {OperatorCode::RVR})),
              (std::vector<std::string>{"0", "1"}));
    EXPECT_EQ(replacements(points(wrap("function f() returns (bool) { return true; }"), {OperatorCode::RVR})),
              (std::vector<std::string>{"false"}));
    EXPECT_EQ(replacements(points(wrap("function f() returns (address) { return msg.sender; }"), {OperatorCode::RVR})),
              (std::vector<std::string>{"address(0)"}));
    EXPECT_EQ(replacements(points(wrap("function f() public constant returns (uint){ return now; }"),
                                  {OperatorCode::RVR})),
              (std::vector<std::string>{"0", "1"}));
}

TEST(Csc, WholeConditionForced) {
    auto pts = points(wrap("function f() { if(this.balance >= 70 finney){ uint x = 1; } }"), {OperatorCode::CSC});
    ASSERT_EQ(pts.size(), 2u);
    EXPECT_EQ(pts[0].original_text, "this.balance >= 70 finney");
    EXPECT_TRUE(points(wrap("function f() { require(1 > 0); }"), {OperatorCode::CSC}).empty());
}

TEST(Esc, SimpleNegativeCases) {
    EXPECT_TRUE(points(wrap("function f() {}"), {OperatorCode::FSC}).empty());
    EXPECT_TRUE(points(wrap("function f() {}"), {OperatorCode::FVC}).empty());
    EXPECT_TRUE(points(wrap("function f() { uint a = 1; }"), {OperatorCode::DLR}).empty());
    EXPECT_TRUE(points(wrap("function f() {}"), {OperatorCode::PKD}).empty());
    EXPECT_TRUE(points(wrap("function f() { uint a = 1; }"), {OperatorCode::EUR, OperatorCode::TUR}).empty());
    auto vtr = points(wrap("uint8 x;"), {OperatorCode::VTR});
    ASSERT_EQ(vtr.size(), 1u);
    EXPECT_EQ(vtr[0].replacement_text, "int");
}

TEST(Esc, CardinalitiesPerSite) {
    auto src = wrap("function f(uint t) public returns (uint) {\n"
                    "  if (msg.sender == tx.origin) { t = 1 ether + 2 days; }\n"
                    "  return addmod(t, 1, 3);\n}");
    auto pts = points(src, all_operators());
    EXPECT_EQ(count_op(pts, OperatorCode::FVC), 3u);
    EXPECT_EQ(count_op(pts, OperatorCode::AVR), 4u);
    EXPECT_EQ(count_op(pts, OperatorCode::EUR), 3u);
    EXPECT_EQ(count_op(pts, OperatorCode::TUR), 4u);
    EXPECT_EQ(count_op(pts, OperatorCode::MFR), 1u);
}

TEST(Gvc, SeededValueIsReproducible) {
    auto src = wrap("function getNow() public constant returns (uint){ return now; }");
    EXPECT_EQ(points(src, {OperatorCode::GVC}).size(), 2u);
    auto a = points(src, {OperatorCode::GVC}, 42);
    auto b = points(src, {OperatorCode::GVC}, 42);
    auto c = points(src, {OperatorCode::GVC}, 43);
    ASSERT_EQ(a.size(), 3u);
    EXPECT_EQ(replacements(a), replacements(b));
    EXPECT_NE(replacements(a), replacements(c));
}

TEST(RequireAssert, ChangeLeavesMessageAlone) {
    auto src = read_text(testsupport::fixture_dir() / "examples/rsd.sol");
    auto pts = points(src, {OperatorCode::RSC, OperatorCode::ASC});
    ASSERT_EQ(pts.size(), 2u);
    auto m = apply_edit(src, pts[0]);
    EXPECT_NE(m.find("require(false, \"Even value required.\");"), std::string::npos);
    EXPECT_NE(apply_edit(src, pts[1]).find("assert(false);"), std::string::npos);
}

TEST(CommentOut, FallsBackToLineComments) {
    EXPECT_EQ(comment_out("delete a;"), "/*delete a;*/");
    EXPECT_EQ(comment_out("f(/*x*/1);"), "//f(/*x*/1);\n");
}

// --- operator examples ------------------------------------------------------

class TableExample : public ::testing::TestWithParam<testsupport::ExampleCase> {};

TEST_P(TableExample, MutantAppearsVerbatim) { EXPECT_TRUE(testsupport::reproduces(GetParam())); }

INSTANTIATE_TEST_SUITE_P(Tables, TableExample, ::testing::ValuesIn(testsupport::example_cases()),
                         [](const auto& info) {
                             return std::string(code_name(info.param.op));
                         });

// --- corpus-wide properties ------------------------------------------------

class Corpus : public ::testing::TestWithParam<std::filesystem::path> {};

TEST_P(Corpus, CountsMatchOracle) {
    auto src = read_text(GetParam());
    auto unit = parse(src);
    auto expected = oracle::point_counts(src, unit);
    auto pts = enumerate(unit, all_operators());
    for (auto code : kAllOperators) EXPECT_EQ(count_op(pts, code), expected[code]) << code_name(code);
}

TEST_P(Corpus, PointInvariants) {
    auto src = read_text(GetParam());
    auto unit = parse(src);
    auto pts = enumerate(unit, all_operators(), 7);
    for (const auto& p : pts) {
        ASSERT_LE(p.target_span.end_byte, src.size());
        EXPECT_EQ(p.target_span.slice(src), p.original_text);
        EXPECT_NE(p.replacement_text, p.original_text);
        auto before = std::string_view(src).substr(0, p.target_span.start_byte);
        EXPECT_EQ(p.target_span.start_line, 1 + std::count(before.begin(), before.end(), '\n'));
        EXPECT_FALSE(p.description.empty());
    }
    EXPECT_TRUE(std::is_sorted(pts.begin(), pts.end(), point_less));
}

TEST_P(Corpus, SubstitutionsReparse) {
    auto src = read_text(GetParam());
    auto unit = parse(src);
    for (const auto& p : enumerate(unit, all_operators())) {
        if (p.op == OperatorCode::SDL || p.op == OperatorCode::DKD || p.op == OperatorCode::RSD ||
            p.op == OperatorCode::ASD)
            continue;
        auto mutated = apply_edit(src, p);
        EXPECT_NO_THROW(parse(mutated)) << code_name(p.op) << " " << p.original_text << " -> " << p.replacement_text;
    }
}

TEST_P(Corpus, EnumerationIsDeterministic) {
    auto src = read_text(GetParam());
    auto a = enumerate(parse(src), all_operators(), 3);
    auto b = enumerate(parse(src), all_operators(), 3);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].op, b[i].op);
        EXPECT_EQ(a[i].target_span, b[i].target_span);
        EXPECT_EQ(a[i].replacement_text, b[i].replacement_text);
        EXPECT_EQ(a[i].node_path, b[i].node_path);
    }
}

TEST_P(Corpus, DisjointOwnership) {
    auto pts = enumerate(parse(read_text(GetParam())), all_operators());
    auto clash = [&](std::set<OperatorCode> x, std::set<OperatorCode> y) {
        for (const auto& p : pts)
            for (const auto& q : pts)
                if (x.count(p.op) && y.count(q.op) && p.target_span == q.target_span) return true;
        return false;
    };
    EXPECT_FALSE(clash({OperatorCode::CSC}, {OperatorCode::RSC, OperatorCode::ASC}));
    EXPECT_FALSE(clash({OperatorCode::COR}, {OperatorCode::LOR}));
}

INSTANTIATE_TEST_SUITE_P(Fixtures, Corpus, ::testing::ValuesIn(testsupport::corpus_files()), [](const auto& info) {
    auto name = info.param.parent_path().filename().string() + "_" + info.param.stem().string();
    for (auto& c : name)
        if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
    return name;
});
