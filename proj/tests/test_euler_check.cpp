#include <gtest/gtest.h>

#include "modbgg/euler_check.hpp"

using namespace modbgg;

TEST(EulerCheck, TopMultiplicityIsOne) {
    const auto d = gsp4();
    EXPECT_EQ(big_computation_n(d, 13, Weight{4, 2}), 1);
    EXPECT_EQ(big_computation_n(d, 17, Weight{5, 2}), 1);
}

TEST(EulerCheck, SweepAtElevenGivesOneEverywhere) {
    const auto rep = generic_sweep(gsp4(), {11});
    ASSERT_FALSE(rep.cells.empty());
    for (const auto& c : rep.cells) {
        EXPECT_EQ(c.n, 1) << c.lambda0.str();
        EXPECT_TRUE(c.bracket_identity) << c.lambda0.str();
        EXPECT_TRUE(c.floors) << c.lambda0.str();
    }
    EXPECT_EQ(rep.minimal_epsilon, 0);
}

TEST(EulerCheck, FloorCasesAtFourTwo) {
    // (a): floor((p+b-a-1)/2) - b = 5 - 2; (b): floor((p-a-b-3)/2) + 1 = 2 + 1
    const auto rep = floor_case_analysis(gsp4(), 13, Weight{4, 2});
    EXPECT_EQ(rep.branch, FloorBranch::Lower);
    ASSERT_GE(rep.rows.size(), 2u);
    EXPECT_EQ(rep.rows[0].expression, 3);
    EXPECT_EQ(rep.rows[0].brute_force, 3);
    EXPECT_EQ(rep.rows[1].expression, 3);
    EXPECT_EQ(rep.rows[1].brute_force, 3);
    EXPECT_TRUE(rep.pass());
}

TEST(EulerCheck, FloorBranchesIncludingEvenBoundary) {
    const auto d = gsp4();
    EXPECT_EQ(floor_case_analysis(d, 13, Weight{5, 1}).branch, FloorBranch::Upper);
    const auto boundary = floor_case_analysis(d, 14, Weight{5, 1});  // 2a = p - 4
    EXPECT_EQ(boundary.branch, FloorBranch::Boundary);
    EXPECT_TRUE(boundary.pass());
    for (Int p = 12; p <= 20; p += 2)
        for (Int b = 0; (p - 4) / 2 + b + 3 < p && b <= (p - 4) / 2; ++b)
            EXPECT_TRUE(floor_case_analysis(d, p, Weight{(p - 4) / 2, b}).pass()) << p << " " << b;
}

TEST(EulerCheck, ClosedFormMatchesBorelPartitions) {
    const auto d = gsp4();
    KostantCounter borel(d, borel_roots(d));
    const Weight alpha = d.root(d.simple[0]), beta = d.root(d.simple[1]);
    for (Int n = 0; n <= 12; ++n)
        for (Int m = 0; m <= 12; ++m) EXPECT_EQ(closed_form_C2(n, m), borel(n * alpha + m * beta)) << n << "," << m;
}

TEST(EulerCheck, BracketIdentityAndSimpleDifference) {
    const auto d = gsp4();
    const auto led = build_ledger(d, 13, Weight{4, 2});
    EXPECT_TRUE(bracket_identity_holds(d, led));
    const Weight alpha = d.root(d.simple[0]);
    EXPECT_EQ(led.simple_top.at(Weight{4, 2}) - led.simple_top.at(Weight{4, 2} + alpha), 1);
    EXPECT_EQ(led.twisted.size(), 4u);
}

TEST(EulerCheck, DifferencesDependOnlyOnB) {
    // Regression pin for the observed literal brackets: (4b+3, 2b+2, 4b+3, 2b+1).
    const auto d = gsp4();
    for (Int p : {11, 13})
        for (const auto& l0 : lowest_alcove_cells(d, p)) {
            if (!in_lowest_alcove(d, p, l0)) continue;
            const Int b = l0[1];
            const std::array<Int, 4> expect{4 * b + 3, 2 * b + 2, 4 * b + 3, 2 * b + 1};
            EXPECT_EQ(multiplicity_differences(d, p, l0), expect) << p << " " << l0.str();
        }
}

TEST(EulerCheck, RejectsUnsupportedInputs) {
    EXPECT_THROW(build_ledger(gl3(), 13, Weight{5, 3, 1}), std::invalid_argument);
    EXPECT_THROW(build_ledger(gsp4(), 13, Weight{8, 6}), std::invalid_argument);
    EXPECT_THROW(floor_case_analysis(gl3(), 13, Weight{5, 3, 1}), std::invalid_argument);
}

TEST(EulerCheck, GenericityLevels) {
    const auto d = gsp4();
    EXPECT_EQ(genericity_level(d, 13, Weight{4, 2}), 1);
    EXPECT_EQ(genericity_level(d, 13, Weight{5, 5}), -1);
}
