#include <gtest/gtest.h>

#include "modbgg/amprandom.hpp"
#include "modbgg/scenarios.hpp"

using namespace modbgg::amp;
using nlohmann::json;

namespace {

Verdict run(const std::string& text) { return run_script(parse_script(text)); }

Degrees supp(const std::string& text, const std::string& obj) { return build_session(parse_script(text)).support(obj); }

}  // namespace

TEST(Ampcalc, ParseErrors) {
    EXPECT_THROW(parse_script(std::string(R"({"facts": []})")), std::exception);
    EXPECT_THROW(parse_script(std::string(R"({"range": [3, 1], "facts": []})")), std::invalid_argument);
    EXPECT_THROW(parse_script(std::string(R"({"range": [0, 2], "facts": [{"bogus": 1}]})")), std::invalid_argument);
    EXPECT_THROW(parse_script(std::string(R"({"range": [0, 2], "facts": [{"triangle": ["a", "b"]}]})")),
                 std::invalid_argument);
    EXPECT_THROW(parse_script(std::string(
                     R"({"range": [0, 2], "facts": [{"map_fact": "T", "degree": 0, "property": "bijective"}]})")),
                 std::invalid_argument);
    EXPECT_THROW(
        parse_script(std::string(R"({"range": [0, 2], "facts": [{"assert_support": "a", "degrees": [0], "status": "x"}]})")),
        std::invalid_argument);
    EXPECT_THROW(parse_script(std::string(R"({"range": [0, 2], "facts": [], "expect": [{"object": "a"}]})")),
                 std::invalid_argument);
    EXPECT_THROW(parse_script(std::string("not json")), json::parse_error);
}

TEST(Ampcalc, TwoTermInjectiveConcentratesInTopDegree) {
    const std::string s = R"({"range": [-2, 6], "facts": [
        {"assert_support": "X", "degrees": [0]},
        {"assert_support": "Y", "degrees": [0]},
        {"filtration": "T", "terms": [["X", 1], ["Y", 2]]},
        {"map_fact": "T", "from": 0, "degree": 0, "property": "injective"}]})";
    EXPECT_EQ(supp(s, "T"), (Degrees{2}));
}

TEST(Ampcalc, TwoTermWithoutMapFactKeepsBothDegrees) {
    const std::string s = R"({"range": [-2, 6], "facts": [
        {"assert_support": "X", "degrees": [0]},
        {"assert_support": "Y", "degrees": [0]},
        {"filtration": "T", "terms": [["X", 1], ["Y", 2]]}]})";
    EXPECT_EQ(supp(s, "T"), (Degrees{1, 2}));
}

TEST(Ampcalc, ZeroTermsGiveZero) {
    const std::string s = R"({"range": [-2, 6], "facts": [
        {"assert_support": "X", "degrees": []},
        {"assert_support": "Y", "degrees": []},
        {"assert_support": "Z", "degrees": []},
        {"filtration": "T", "terms": [["X", 0], ["Y", 3], ["Z", 5]]}]})";
    EXPECT_TRUE(supp(s, "T").empty());
}

TEST(Ampcalc, GradedPiecesInOneDegree) {
    const std::string s = R"({"range": [-2, 6], "facts": [
        {"assert_support": "A", "degrees": [2]},
        {"assert_support": "B", "degrees": [2]},
        {"assert_support": "C", "degrees": [2]},
        {"filtration": "T", "terms": [["A", 0], ["B", 0], ["C", 0]]}]})";
    EXPECT_EQ(supp(s, "T"), (Degrees{2}));
}

TEST(Ampcalc, TriangleLongExactSequence) {
    const std::string s = R"({"range": [-2, 6], "facts": [
        {"assert_support": "A", "degrees": [1]},
        {"assert_support": "C", "degrees": [1]},
        {"triangle": ["A", "B", "C"]},
        {"assert_nonzero": "C", "degree": 1}]})";
    const auto sess = build_session(parse_script(s));
    EXPECT_EQ(sess.support("B"), (Degrees{1}));
    // H^1(C) != 0 and H^2(A) = 0 force H^1(B) -> H^1(C) onto a nonzero space
    EXPECT_TRUE(sess.nonzero("B").count(1));
}

TEST(Ampcalc, ContradictionFails) {
    const std::string s = R"({"range": [0, 4], "facts": [
        {"id": "s", "assert_support": "A", "degrees": [0]},
        {"id": "n", "assert_nonzero": "A", "degree": 2}]})";
    const auto v = run(s);
    EXPECT_EQ(v.outcome, Outcome::Fail);
    ASSERT_TRUE(v.first_failure);
    EXPECT_NE(v.first_failure->find("contradiction"), std::string::npos);
}

TEST(Ampcalc, SerreDualityMirrorsSupport) {
    const std::string s = R"({"range": [-2, 6], "facts": [
        {"assert_support": "A", "degrees": [0, 1]},
        {"serre_dual": ["A", "B"], "dimension": 2}],
        "expect": [{"object": "B", "within": [1, 2]}]})";
    const auto v = run(s);
    EXPECT_EQ(v.outcome, Outcome::Pass);
    EXPECT_EQ(v.supports.at("B"), (Degrees{1, 2}));
}

TEST(Ampcalc, HypothesesMakePassConditional) {
    const std::string s = R"({"range": [0, 2], "facts": [
        {"id": "h", "assert_support": "A", "degrees": [1], "status": "hypothesis"}],
        "expect": [{"object": "A", "support": [1]}]})";
    const auto v = run(s);
    EXPECT_EQ(v.outcome, Outcome::ConditionalPass);
    EXPECT_TRUE(v.passed());
    EXPECT_EQ(v.hypotheses, std::vector<std::string>{"h"});
    EXPECT_EQ(run_script(parse_script(s).without("h")).outcome, Outcome::Fail);
}

TEST(Ampcalc, MapFactNeedsConsecutiveTerms) {
    const std::string s = R"({"range": [0, 4], "facts": [
        {"filtration": "T", "terms": [["X", 0], ["Y", 2]]},
        {"map_fact": "T", "from": 0, "degree": 0, "property": "injective"}]})";
    EXPECT_THROW(run(s), std::invalid_argument);
    const std::string unknown = R"({"range": [0, 4], "facts": [
        {"map_fact": "Q", "from": 0, "degree": 0, "property": "surjective"}]})";
    EXPECT_THROW(run(unknown), std::invalid_argument);
}

TEST(Ampcalc, ShippedScenarioVerdicts) {
    const auto names = scenario_names();
    EXPECT_EQ(names.size(), 3u);
    EXPECT_EQ(run_scenario("gl3_concentration").outcome, Outcome::Pass);
    EXPECT_EQ(run_scenario("gsp4_entailment").outcome, Outcome::Pass);
    EXPECT_EQ(run_scenario("gsp4_c1").outcome, Outcome::ConditionalPass);
    EXPECT_EQ(run_scenario("gl3_concentration").supports.at("bgg"), (Degrees{2}));
    EXPECT_THROW(load_scenario("nope"), std::invalid_argument);
}

TEST(Ampcalc, ShippedScenariosAreMinimal) {
    for (const char* name : {"gl3_concentration", "gsp4_entailment"}) {
        const auto r = check_minimality(load_scenario(name));
        EXPECT_FALSE(r.deletions.empty()) << name;
        EXPECT_TRUE(r.minimal()) << name;
    }
}

TEST(Ampcalc, RankByElimination) {
    EXPECT_EQ(rank({{1, 2}, {2, 4}}, 2, 2), 1);
    EXPECT_EQ(rank({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 3, 3), 3);
    EXPECT_EQ(rank(zeros(2, 3), 2, 3), 0);
    EXPECT_EQ(rank({{2, 3, 5}, {4, 6, 10}, {1, 1, 1}}, 3, 3), 2);
}

TEST(Ampcalc, RandomComplexesAreSoundAndKeepPlantedBetti) {
    std::mt19937_64 rng(12345);
    for (int i = 0; i < 100; ++i) {
        const auto k = random_complex(rng);
        for (int d = 0; d < k.length(); ++d) EXPECT_EQ(k.betti(d), k.planted[d]);
        for (int d = 0; d + 2 < k.length(); ++d) {
            const auto sq = multiply(k.diff[d + 1], k.diff[d], k.ranks[d + 2], k.ranks[d + 1], k.ranks[d]);
            EXPECT_EQ(sq, zeros(k.ranks[d + 2], k.ranks[d]));
        }
        const auto c = check_soundness(k);
        EXPECT_TRUE(c.sound) << c.detail;
    }
}
