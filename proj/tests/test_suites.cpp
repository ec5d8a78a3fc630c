#include <gtest/gtest.h>

#include <set>

#include "cliffver/suites.hpp"

using namespace cliffver;
using nlohmann::json;

TEST(Grid, ExpandsListsAndRanges) {
    auto pts = expandGrid({{"n", "2..4"}, {"t", {-1, 1}}, {"mu", "1,1"}});
    ASSERT_EQ(pts.size(), 6u);
    EXPECT_EQ(pts[0], json({{"mu", "1,1"}, {"n", 2}, {"t", -1}}));
    EXPECT_EQ(expandGrid(json::object()).size(), 1u);
    EXPECT_THROW(expandGrid({{"n", "3..x"}}), UsageError);
}

TEST(Runner, SortedBySuiteThenParams) {
    RunConfig cfg;
    cfg.suites = {{"residual", {{"m", {4, 2, 3}}}}, {"pascal", {{"n", 5}, {"s", 1}}}};
    auto recs = runSuites(cfg);
    ASSERT_EQ(recs.size(), 4u);
    EXPECT_EQ(recs[0].suite, "pascal");
    EXPECT_EQ(recs[1].params.at("m"), 2);
    EXPECT_EQ(recs[3].params.at("m"), 4);
    EXPECT_EQ(exitStatusFor(recs), 0);
}

TEST(Runner, ParallelRunMatchesSerialBytes) {
    RunConfig cfg;
    cfg.suites = {{"keylemma", {{"n", {4, 5}}, {"k", 2}}}, {"hodge", {{"m", 3}, {"frames", 2}}},
                  {"les", {{"n", 4}, {"k", 2}, {"form", {"split", "diag"}}}}};
    const std::string serial = buildReport(cfg, runSuites(cfg)).dump();
    cfg.jobs = 3;
    EXPECT_EQ(buildReport(cfg, runSuites(cfg)).dump(), serial);
}

TEST(Runner, StatusesAndExitCodes) {
    RunConfig cfg;
    auto bad = runCheck("keylemma", {{"n", 4}, {"k", 2}, {"r", 2}}, cfg);
    EXPECT_EQ(bad.status, "error");
    auto fail = runCheck("pascal", {{"n", 6}, {"s", 3}, {"formula", "printed"}}, cfg);
    EXPECT_EQ(fail.status, "fail");
    auto ok = runCheck("pascal", {{"n", 6}, {"s", 3}}, cfg);
    EXPECT_EQ(ok.status, "pass");
    EXPECT_EQ(exitStatusFor({ok, fail}), 1);
    EXPECT_EQ(exitStatusFor({ok, fail, bad}), 2);
    EXPECT_EQ(exitStatusFor({}), 0);
    EXPECT_THROW(runCheck("nosuch", json::object(), cfg), UsageError);
}

TEST(Runner, SpecExamples) {
    RunConfig cfg;
    auto b = runCheck("bwb", {{"n", 5}, {"k", 2}, {"mu", "1,1"}, {"nu", "0,0,0"}}, cfg);
    EXPECT_EQ(b.metrics.at("degree"), 0);
    EXPECT_EQ(b.metrics.at("dimension"), "10");
    auto r = runCheck("residual", {{"m", 3}, {"parity", "odd"}}, cfg);
    EXPECT_EQ(r.metrics.at("hhResidual"), 14);
    auto l = runCheck("les", {{"n", 6}, {"k", 2}, {"form", "split"}, {"window", 6}}, cfg);
    EXPECT_EQ(l.status, "pass");
}

TEST(Runner, DiagonalFormsFallBackToAuxiliaryPrime) {
    RunConfig cfg;
    auto rec = runCheck("les", {{"n", 6}, {"k", 3}, {"form", "diag"}, {"r", 6}}, cfg);
    ASSERT_EQ(rec.status, "pass");
    EXPECT_EQ(rec.metrics["runs"][0]["prime"], "2305843009213693921");
    auto low = runCheck("les", {{"n", 6}, {"k", 3}, {"form", "diag"}, {"r", 5}}, cfg);
    ASSERT_EQ(low.status, "pass");
    EXPECT_EQ(low.metrics["runs"][0]["prime"], std::to_string(cfg.prime));
}

TEST(Config, OverlayAndValidation) {
    RunConfig base;
    RunConfig c = applyConfigJson(json::parse(R"({"prime": "1000003", "seed": 7, "fieldMode": "prime",
        "suites": [{"suite": "morita", "params": {"n": 3}}]})"),
                                  base);
    EXPECT_EQ(c.prime, 1000003u);
    EXPECT_EQ(c.seed, 7u);
    EXPECT_EQ(c.fieldMode, FieldMode::Prime);
    ASSERT_EQ(c.suites.size(), 1u);
    EXPECT_NO_THROW(validateConfig(c));
    EXPECT_THROW(applyConfigJson(json::parse(R"({"suites": [{"suite": "nosuch"}]})"), base), UsageError);
    EXPECT_THROW(applyConfigJson(json::parse(R"({"seed": "x"})"), base), UsageError);

    RunConfig v;
    v.windowP = 5;
    EXPECT_THROW(validateConfig(v), UsageError);
    v.windowP = 6;
    v.prime = 1000001;  // composite
    EXPECT_THROW(validateConfig(v), UsageError);
    v.prime = 4297;  // above 3! * 6, below 6! * 6
    EXPECT_NO_THROW(validateConfig(v));
    v.suites = {{"keylemma", {{"n", 6}, {"k", 6}}}};
    EXPECT_THROW(validateConfig(v), UsageError);
}

TEST(Report, KeysAndEmptyRun) {
    RunConfig cfg;
    json rep = buildReport(cfg, runSuites(cfg));
    EXPECT_EQ(rep.at("checks"), json::array());
    std::vector<std::string> keys;
    for (const auto& [k, v] : rep.items()) keys.push_back(k);
    EXPECT_EQ(keys, (std::vector<std::string>{"checks", "configEcho", "toolVersion"}));
    cfg.suites = {{"residual", {{"m", 2}}}};
    json one = buildReport(cfg, runSuites(cfg)).at("checks").at(0);
    std::vector<std::string> ck;
    for (const auto& [k, v] : one.items()) ck.push_back(k);
    EXPECT_EQ(ck, (std::vector<std::string>{"elapsedMillis", "metrics", "params", "status", "suite"}));
    EXPECT_EQ(one.at("elapsedMillis"), 0);
}

TEST(Selectors, CoverEverySuite) {
    std::set<std::string> seen;
    for (const auto& s : fullSuiteSelectors()) seen.insert(s.suite);
    for (const auto& name : suiteNames()) EXPECT_TRUE(seen.count(name)) << name;
}
