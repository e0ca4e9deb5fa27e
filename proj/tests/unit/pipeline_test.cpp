#include <gtest/gtest.h>

#include <random>
#include <regex>
#include <set>

#include "fixtures.hpp"
#include "solmut/errors.hpp"
#include "solmut/parser.hpp"
#include "solmut/pipeline.hpp"

using namespace solmut;
namespace fs = std::filesystem;
using testsupport::read_text;
using testsupport::TempDir;

namespace {

std::map<std::string, std::string> small_project() {
    auto dir = testsupport::fixture_dir() / "examples";
    return {{"contracts/Halver.sol", read_text(dir / "rsd.sol")}, {"contracts/Bank.sol", read_text(dir / "pkd.sol")}};
}

void write_project(const fs::path& root, const std::map<std::string, std::string>& files) {
    for (const auto& [path, text] : files) testsupport::write_text(root / path, text);
}

std::string stub(const char* name) { return "sh " + (testsupport::stub_dir() / name).string(); }

} // namespace

TEST(ApplyEdit, SplicesAndChecks) {
    MutationPoint p;
    p.target_span = {5, 6, 1, 6};
    p.original_text = "+";
    p.replacement_text = "-";
    EXPECT_EQ(apply_edit("a = b+c;", p), "a = b-c;");
    p.original_text = "*";
    EXPECT_THROW(apply_edit("a = b+c;", p), SpanMismatch);
    p.target_span = {40, 41, 1, 41};
    EXPECT_THROW(apply_edit("a = b+c;", p), SpanMismatch);
}

TEST(ApplyEdit, RandomSplicesAreExact) {
    std::mt19937_64 rng(12345);
    for (int iter = 0; iter < 2000; ++iter) {
        std::string src(rng() % 40, 'x');
        for (auto& c : src) c = static_cast<char>('a' + rng() % 26);
        std::uint32_t a = src.empty() ? 0 : rng() % (src.size() + 1);
        std::uint32_t b = a + (src.size() - a == 0 ? 0 : rng() % (src.size() - a + 1));
        MutationPoint p;
        p.target_span = {a, b, 1, a + 1};
        p.original_text = src.substr(a, b - a);
        p.replacement_text = std::string(rng() % 5, '#');
        auto out = apply_edit(src, p);
        ASSERT_EQ(out, src.substr(0, a) + p.replacement_text + src.substr(b));
        ASSERT_EQ(out.size(), src.size() - (b - a) + p.replacement_text.size());
    }
}

TEST(Lifecycle, TransitionTable) {
    using S = MutantStatus;
    const std::set<std::pair<S, S>> allowed = {
        {S::generated, S::compile_failed}, {S::generated, S::equivalent_marked}, {S::generated, S::pending},
        {S::pending, S::killed},           {S::pending, S::survived},
    };
    const S all[] = {S::generated, S::compile_failed, S::equivalent_marked, S::pending, S::killed, S::survived};
    for (auto from : all)
        for (auto to : all) {
            EXPECT_EQ(can_transition(from, to), allowed.count({from, to}) == 1) << to_string(from) << "->" << to_string(to);
            Mutant m;
            m.status = from;
            if (allowed.count({from, to})) EXPECT_NO_THROW(m.advance(to));
            else EXPECT_THROW(m.advance(to), std::logic_error);
        }
    for (auto s : all) EXPECT_EQ(parse_mutant_status(to_string(s)), s);
}

TEST(Generate, IdsOrderAndDedup) {
    auto files = small_project();
    auto set = generate_mutants(files, all_operators());
    ASSERT_FALSE(set.mutants.empty());

    std::size_t candidates = 0;
    for (const auto& [path, text] : files) candidates += enumerate(parse(text), all_operators()).size();
    EXPECT_EQ(set.mutants.size() + set.duplicates_removed, candidates);
    EXPECT_GT(set.duplicates_removed, 0u); // RSD and SDL both comment out the require line

    const std::regex id_re(R"(([A-Z]{3,4})-(\d+)-([0-9a-f]{8}))");
    std::set<std::string> ids, texts;
    std::map<OperatorCode, int> ordinal;
    OperatorCode last = OperatorCode::AORB;
    for (const auto& m : set.mutants) {
        std::smatch match;
        ASSERT_TRUE(std::regex_match(m.id, match, id_re)) << m.id;
        EXPECT_EQ(match[1].str(), code_name(m.point.op));
        EXPECT_EQ(std::stoi(match[2].str()), ++ordinal[m.point.op]);
        EXPECT_EQ(match[3].str(), mutant_digest(m.source_path, m.mutated_source));
        EXPECT_TRUE(ids.insert(m.id).second);
        EXPECT_TRUE(texts.insert(m.source_path + '\0' + m.mutated_source).second) << "duplicate text " << m.id;
        EXPECT_NE(m.mutated_source, files.at(m.source_path));
        EXPECT_EQ(m.mutated_source, apply_edit(files.at(m.source_path), m.point));
        EXPECT_EQ(m.status, MutantStatus::generated);
        EXPECT_LE(static_cast<int>(last), static_cast<int>(m.point.op));
        last = m.point.op;
    }

    auto again = generate_mutants(files, all_operators());
    ASSERT_EQ(again.mutants.size(), set.mutants.size());
    for (std::size_t i = 0; i < set.mutants.size(); ++i) EXPECT_EQ(again.mutants[i].id, set.mutants[i].id);
}

TEST(Generate, OperatorFilterAndParseErrors) {
    auto set = generate_mutants(small_project(), {OperatorCode::PKD});
    ASSERT_EQ(set.mutants.size(), 2u);
    for (const auto& m : set.mutants) EXPECT_EQ(m.point.op, OperatorCode::PKD);
    try {
        generate_mutants({{"bad.sol", "contract C {\n function ( }"}}, all_operators());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(std::string(e.what()).rfind("bad.sol:2:", 0), 0u) << e.what();
    }
}

TEST(Marks, ParseAndApply) {
    EXPECT_EQ(parse_marks("# header\nAOI-1-aaaaaaaa\n\n  ROR-2-bbbbbbbb  # note\n"),
              (std::vector<std::string>{"AOI-1-aaaaaaaa", "ROR-2-bbbbbbbb"}));
    TempDir tmp;
    auto set = generate_mutants(small_project(), {OperatorCode::PKD, OperatorCode::RSD});
    testsupport::write_text(tmp.path() / "marks.txt", set.mutants[0].id + "\nNOPE-1-00000000\n");
    auto warnings = load_equivalence_marks(set, tmp.path() / "marks.txt");
    EXPECT_EQ(set.mutants[0].status, MutantStatus::equivalent_marked);
    EXPECT_EQ(set.mutants[1].status, MutantStatus::generated);
    ASSERT_EQ(warnings.size(), 1u);
    EXPECT_NE(warnings[0].find("NOPE-1-00000000"), std::string::npos);
    EXPECT_THROW(load_equivalence_marks(set, tmp.path() / "missing.txt"), Error);
}

TEST(Workspace, CopyExcludesOutAndGit) {
    TempDir tmp;
    auto project = tmp.path() / "proj";
    write_project(project, small_project());
    testsupport::write_text(project / ".git/HEAD", "ref");
    testsupport::write_text(project / "out/stale.txt", "x");
    testsupport::write_text(project / "test/run.js", "// tests");
    copy_project(project, tmp.path() / "copy", project / "out");
    EXPECT_TRUE(fs::exists(tmp.path() / "copy/contracts/Bank.sol"));
    EXPECT_TRUE(fs::exists(tmp.path() / "copy/test/run.js"));
    EXPECT_FALSE(fs::exists(tmp.path() / "copy/.git"));
    EXPECT_FALSE(fs::exists(tmp.path() / "copy/out"));
}

TEST(Workspace, MaterializeAndCompileFilter) {
    TempDir tmp;
    auto project = tmp.path() / "proj";
    auto out = project / "out";
    auto files = small_project();
    write_project(project, files);
    auto set = generate_mutants(files, all_operators());
    auto marked = set.mutants.front().id;
    testsupport::write_text(tmp.path() / "marks", marked + "\n");
    load_equivalence_marks(set, tmp.path() / "marks");
    materialize(set, project, out);

    EXPECT_EQ(read_text(original_dir(out) / "contracts/Bank.sol"), files["contracts/Bank.sol"]);
    for (const auto& m : set.mutants) {
        auto dir = mutant_dir(out, m.id);
        ASSERT_EQ(read_text(dir / m.source_path), m.mutated_source);
        for (const auto& [path, text] : files)
            if (path != m.source_path) EXPECT_EQ(read_text(dir / path), text);
        EXPECT_TRUE(fs::exists(dir / "mutant.json"));
    }

    // Comment-style deletions are rejected by the scripted compiler.
    CompileOptions opts{stub("compile_reject.sh") + " '/*'", std::chrono::seconds(30), 4};
    auto warnings = compile_filter(set, out, opts);
    EXPECT_TRUE(warnings.empty());
    for (const auto& m : set.mutants) {
        if (m.id == marked) EXPECT_EQ(m.status, MutantStatus::equivalent_marked);
        else if (m.mutated_source.find("/*") != std::string::npos) EXPECT_EQ(m.status, MutantStatus::compile_failed);
        else EXPECT_EQ(m.status, MutantStatus::pending) << m.id;
    }
}

TEST(Workspace, CompileAdapterErrorsAndTimeouts) {
    TempDir tmp;
    auto project = tmp.path() / "proj";
    auto out = project / "out";
    std::map<std::string, std::string> files{{"Bank.sol", read_text(testsupport::fixture_dir() / "examples/pkd.sol")}};
    write_project(project, files);
    auto set = generate_mutants(files, {OperatorCode::PKD, OperatorCode::AVR});
    materialize(set, project, out);

    auto crash = set;
    EXPECT_THROW(compile_filter(crash, out, {stub("compile_crash.sh"), std::chrono::seconds(10), 1}), AdapterError);

    // The original fails: nothing downstream makes sense.
    auto broken = set;
    EXPECT_THROW(compile_filter(broken, out, {stub("compile_reject.sh") + " deposit", std::chrono::seconds(10), 1}),
                 AdapterError);

    // Only the PKD mutant drops "payable{"; that one hangs and times out.
    auto warnings = compile_filter(set, out, {stub("compile_sleep.sh") + " 'deposit(){'", std::chrono::seconds(1), 2});
    ASSERT_EQ(warnings.size(), 1u);
    for (const auto& m : set.mutants)
        EXPECT_EQ(m.status, m.point.op == OperatorCode::PKD ? MutantStatus::compile_failed : MutantStatus::pending);

    auto plain = generate_mutants(files, {OperatorCode::AVR});
    accept_uncompiled(plain);
    for (const auto& m : plain.mutants) EXPECT_EQ(m.status, MutantStatus::pending);
}

TEST(Catalog, RoundTripAndStable) {
    auto set = generate_mutants(small_project(), all_operators(), 9);
    accept_uncompiled(set);
    set.mutants[1].advance(MutantStatus::killed);
    auto text = catalog_json(set);
    EXPECT_EQ(text, catalog_json(set));
    EXPECT_EQ(text.find("/tmp"), std::string::npos);
    auto back = parse_catalog(text);
    EXPECT_EQ(back.seed, 9u);
    EXPECT_EQ(back.enabled_operators, set.enabled_operators);
    EXPECT_EQ(back.duplicates_removed, set.duplicates_removed);
    ASSERT_EQ(back.mutants.size(), set.mutants.size());
    for (std::size_t i = 0; i < set.mutants.size(); ++i) {
        const auto& a = set.mutants[i];
        const auto& b = back.mutants[i];
        EXPECT_EQ(a.id, b.id);
        EXPECT_EQ(a.status, b.status);
        EXPECT_EQ(a.source_path, b.source_path);
        EXPECT_EQ(a.point.op, b.point.op);
        EXPECT_EQ(a.point.target_span, b.point.target_span);
        EXPECT_EQ(a.point.original_text, b.point.original_text);
        EXPECT_EQ(a.point.replacement_text, b.point.replacement_text);
        EXPECT_EQ(a.point.node_path, b.point.node_path);
    }
    EXPECT_THROW(parse_catalog("{\"mutants\": 3}"), Error);
}
