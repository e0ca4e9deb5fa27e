#include <gtest/gtest.h>

#include "e2e.hpp"
#include "solmut/errors.hpp"
#include "solmut/report.hpp"

using namespace testsupport;
namespace fs = std::filesystem;
using nlohmann::json;

TEST(Cli, ParseReportsCountsAndDiagnostics) {
    TempDir tmp;
    auto good = fixture_dir() / "examples/fsc.sol";
    auto r = cli({"parse", good.string()});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("contracts=1 functions="), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("nodes=14"), std::string::npos) << r.out;

    write_text(tmp.path() / "bad.sol", "contract C {\n  function f( {\n}\n");
    r = cli({"parse", (tmp.path() / "bad.sol").string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("bad.sol:2:"), std::string::npos) << r.err;

    EXPECT_EQ(cli({"parse", (tmp.path() / "absent.sol").string()}).code, 2);
    EXPECT_EQ(cli({"frobnicate"}).code, 2);
    EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST(Cli, ConfigKeys) {
    solmut::cli::ToolConfig c;
    solmut::cli::apply_config_json(R"({"seed": 4, "operators": ["ROR", "AOI"], "parallel_workers": 3,
                                       "output_dir": "o", "per_test_timeout_s": 9})",
                                   c);
    EXPECT_EQ(c.seed, 4u);
    EXPECT_EQ(c.operators, (solmut::OperatorSet{solmut::OperatorCode::ROR, solmut::OperatorCode::AOI}));
    EXPECT_EQ(c.jobs, 3u);
    EXPECT_EQ(c.out, "o");
    EXPECT_EQ(c.per_test_timeout_s, 9);
    EXPECT_THROW(solmut::cli::apply_config_json(R"({"sed": 4})", c), solmut::Error);
    EXPECT_THROW(solmut::cli::apply_config_json(R"({"operators": ["XYZ"]})", c), solmut::Error);

    TempDir tmp;
    write_text(tmp.path() / "cfg.json", R"({"bogus": true})");
    EXPECT_EQ(cli({"--config", (tmp.path() / "cfg.json").string(), "score"}).code, 2);
}

TEST(Cli, MutateRunScoreEndToEnd) {
    TempDir tmp;
    auto project = make_project(tmp.path() / "proj");
    auto out = tmp.path() / "out";
    auto base = std::vector<std::string>{"--project", project.string(), "--out", out.string(), "--operators",
                                         "ROR,RSD", "--jobs", "4"};
    auto with = [&](std::vector<std::string> extra) {
        auto a = base;
        a.insert(a.end(), extra.begin(), extra.end());
        return cli(a);
    };

    auto r = with({"score"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("matrix"), std::string::npos);

    r = with({"--sources", "contracts/*.sol", "mutate"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto first = read_text(out / "mutants.json");
    auto ids = catalog_ids(out);
    ASSERT_GE(ids.size(), 20u);
    EXPECT_NE(r.out.find("mutants: " + std::to_string(ids.size())), std::string::npos) << r.out;

    auto again_out = tmp.path() / "out2";
    auto a2 = base;
    a2[3] = again_out.string();
    a2.insert(a2.end(), {"--sources", "contracts/*.sol", "mutate"});
    ASSERT_EQ(cli(a2).code, 0);
    EXPECT_EQ(read_text(again_out / "mutants.json"), first);

    std::mt19937_64 rng(1);
    auto truth = random_truth(rng, ids, 4, 0, tmp.path() / "log");
    truth["outcomes"]["original"] = json::object();
    write_text(tmp.path() / "truth.json", truth.dump());
    r = with({"--test-command", truth_command(tmp.path() / "truth.json"), "run"});
    ASSERT_EQ(r.code, 0) << r.err;

    auto cells = rescan_log(tmp.path() / "log", truth["tests"].get<std::vector<std::string>>());
    std::size_t killed = 0;
    for (const auto& id : ids) {
        bool k = false;
        for (const auto& [t, s] : cells.at(id)) k = k || s == "fail" || s == "timeout";
        killed += k;
    }
    EXPECT_EQ(catalog_ids(out, "killed").size(), killed);
    EXPECT_EQ(catalog_ids(out, "survived").size(), ids.size() - killed);

    r = with({"score"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("mutation score: " + solmut::format_score(killed, ids.size() - killed)), std::string::npos)
        << r.out;
    EXPECT_TRUE(fs::exists(out / "report.json"));
    r = with({"report"});
    EXPECT_NE(r.out.find("| Total |"), std::string::npos);

    // Marking a mutant equivalent at score time takes it out of the denominator.
    write_text(tmp.path() / "marks", ids.front() + "\n");
    r = with({"--marks", (tmp.path() / "marks").string(), "score"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto report = json::parse(read_text(out / "report.json"));
    EXPECT_EQ(report.at("totals").at("equivalent"), 1);
}

TEST(Cli, BaselineFailureAndExperiment) {
    TempDir tmp;
    auto project = make_project(tmp.path() / "proj");
    auto out = tmp.path() / "out";
    std::vector<std::string> base{"--project", project.string(), "--out", out.string(), "--operators", "RSD,CSC"};
    auto with = [&](std::vector<std::string> extra) {
        auto a = base;
        a.insert(a.end(), extra.begin(), extra.end());
        return cli(a);
    };
    ASSERT_EQ(with({"mutate"}).code, 0);
    auto ids = catalog_ids(out);

    json truth = {{"tests", {"a", "b", "c", "d"}}, {"outcomes", {{"original", {{"b", "fail"}}}}}};
    write_text(tmp.path() / "truth.json", truth.dump());
    auto r = with({"--test-command", truth_command(tmp.path() / "truth.json"), "run"});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("b"), std::string::npos);

    std::mt19937_64 rng(3);
    truth = random_truth(rng, ids, 4, 0, tmp.path() / "log");
    write_text(tmp.path() / "truth.json", truth.dump());
    ASSERT_EQ(with({"--test-command", truth_command(tmp.path() / "truth.json"), "--jobs", "4", "run"}).code, 0);

    json cov = {{"tests", json::array()}};
    for (const auto& t : truth["tests"])
        cov["tests"].push_back({{"id", t}, {"lines", {"A.sol:" + std::to_string(rng() % 5)}}, {"branches", json::array()}});
    write_text(tmp.path() / "cov.json", cov.dump());
    EXPECT_EQ(with({"experiment"}).code, 2);
    r = with({"--coverage", (tmp.path() / "cov.json").string(), "--seed", "5", "experiment"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto first = read_text(out / "experiment.json");
    ASSERT_EQ(with({"--coverage", (tmp.path() / "cov.json").string(), "--seed", "5", "experiment"}).code, 0);
    EXPECT_EQ(read_text(out / "experiment.json"), first);
    EXPECT_NE(r.out.find("detection rate TS_MS1:"), std::string::npos);
}
