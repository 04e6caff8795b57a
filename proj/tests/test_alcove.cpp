#include <gtest/gtest.h>

#include <deque>
#include <set>

#include "modbgg/alcove.hpp"

using namespace modbgg;

namespace {

// Order oracle: walk upward from lambda by simple roots, inside a bounding height.
bool leq_by_search(const GroupDatum& d, const Weight& lambda, const Weight& mu) {
    const Int target = height(d, mu);
    std::set<Weight> seen{lambda};
    std::deque<Weight> q{lambda};
    while (!q.empty()) {
        Weight x = q.front();
        q.pop_front();
        if (x == mu) return true;
        for (int s : d.simple) {
            Weight y = x + d.root(s);
            if (height(d, y) <= target && seen.insert(y).second) q.push_back(y);
        }
    }
    return false;
}

}  // namespace

TEST(Alcove, FloorDivisionConventions) {
    EXPECT_EQ(floor_div(7, 2), 3);
    EXPECT_EQ(floor_div(-7, 2), -4);
    EXPECT_EQ(ceil_div(-7, 2), -3);
    EXPECT_EQ(pos_mod(-1, 13), 12);
}

TEST(Alcove, OrderMatchesSearchOracle) {
    for (const auto& d : {gsp4(), gl3()}) {
        const Weight base = d.rank == 2 ? Weight{1, 0} : Weight{1, 0, 0};
        std::vector<Weight> pts;
        for (int i = 0; i < d.num_roots(); ++i)
            for (int j = i; j < d.num_roots(); ++j) {
                pts.push_back(base + d.root(i) + d.root(j));
                pts.push_back(base - d.root(i));
            }
        pts.push_back(base);
        for (const auto& a : pts)
            for (const auto& b : pts) EXPECT_EQ(leq_order(d, a, b), leq_by_search(d, a, b)) << a.str() << b.str();
    }
}

TEST(Alcove, Gsp4OrbitFamilyAtThirteen) {
    const auto d = gsp4();
    const auto f = orbit_family(d, 13, Weight{4, 2});
    EXPECT_EQ(f["lambda1"], (Weight{8, 6}));
    EXPECT_EQ(f["lambda2"], (Weight{14, 6}));
    EXPECT_EQ(f["lambda3"], (Weight{17, 9}));
    EXPECT_EQ(f["mu0"], (Weight{4, -4}));
    EXPECT_EQ(f["mu2"], (Weight{14, -8}));
    EXPECT_EQ(f["nu1"], (Weight{5, -11}));
    EXPECT_EQ(f["epsilon0"], (Weight{-5, -7}));
    EXPECT_EQ(f["epsilon3"], (Weight{-12, -20}));
    for (int i = 0; i < 4; ++i) EXPECT_EQ(named_alcove(d, 13, f["lambda" + std::to_string(i)]), i);
}

TEST(Alcove, Gl3OrbitFamily) {
    const auto d = gl3();
    const auto f = orbit_family(d, 13, Weight{5, 3, 1});
    EXPECT_EQ(f["lambda1"], (Weight{12, 3, -6}));
    EXPECT_EQ(named_alcove(d, 13, f["lambda1"]), 1);
    EXPECT_EQ(lowest_alcove_partner(d, 13, f["lambda1"]), (Weight{5, 3, 1}));
}

TEST(Alcove, LowestAlcovePartnerInvertsFamily) {
    const auto d = gsp4();
    for (const auto& l0 : lowest_alcove_cells(d, 17)) {
        const auto f = orbit_family(d, 17, l0);
        for (int i = 0; i < 4; ++i) EXPECT_EQ(lowest_alcove_partner(d, 17, f["lambda" + std::to_string(i)]), l0);
    }
}

TEST(Alcove, LowestAlcoveCellCountMatchesInequalities) {
    // GSp4: a >= b >= 0 and a + b + 3 < p; GL3 normalised: a >= b >= 0 and a + 2 < p.
    for (Int p : {11, 13, 17}) {
        std::size_t c4 = 0, c3 = 0;
        for (Int a = 0; a < p; ++a)
            for (Int b = 0; b <= a; ++b) {
                if (a + b + 3 < p) ++c4;
                if (a + 2 < p) ++c3;
            }
        EXPECT_EQ(lowest_alcove_cells(gsp4(), p).size(), c4);
        EXPECT_EQ(lowest_alcove_cells(gl3(), p).size(), c3);
    }
}

TEST(Alcove, AffineReflectionIsInvolutionFixingItsWall) {
    const auto d = gsp4();
    for (int r = 0; r < d.num_roots(); ++r)
        for (Int n : {-1, 0, 1, 2}) {
            const Weight x{3, -5};
            const AffineReflection s{r, n};
            EXPECT_EQ(affine_reflect(d, 13, s, affine_reflect(d, 13, s, x)), x);
            const Weight y = affine_reflect(d, 13, s, x);
            EXPECT_EQ(pair_index(d, x + d.rho, r) + pair_index(d, y + d.rho, r), 2 * 13 * n);
        }
}

TEST(Alcove, ClassificationFlags) {
    const auto d = gsp4();
    EXPECT_TRUE(in_lowest_alcove(d, 13, Weight{4, 2}));
    EXPECT_FALSE(in_lowest_alcove(d, 13, Weight{8, 6}));
    EXPECT_TRUE(is_p_restricted(d, 13, Weight{8, 6}));
    EXPECT_FALSE(is_p_restricted(d, 13, Weight{14, -1}));
    EXPECT_TRUE(is_epsilon_generic(d, 13, 1, Weight{4, 2}));
    EXPECT_FALSE(is_epsilon_generic(d, 13, 2, Weight{4, 2}));
    EXPECT_FALSE(classify(d, 13, Weight{5, 5}).regular());  // <(7,6), (1,1)> = 13
    EXPECT_THROW(classify(d, 1, Weight{0, 0}), std::invalid_argument);
    EXPECT_THROW(orbit_family(d, 13, Weight{8, 6}), std::invalid_argument);
}

TEST(Alcove, LinkageChainsRise) {
    const auto d = gsp4();
    const auto f = orbit_family(d, 13, Weight{4, 2});
    for (int i = 0; i < 3; ++i) {
        const Weight a = f["lambda" + std::to_string(i)], b = f["lambda" + std::to_string(i + 1)];
        auto chain = linkage_up(d, 13, a, b);
        ASSERT_TRUE(chain);
        Weight cur = a;
        for (const auto& st : *chain) {
            EXPECT_TRUE(leq_order(d, cur, st.to));
            cur = st.to;
        }
        EXPECT_EQ(cur, b);
        EXPECT_FALSE(linkage_up(d, 13, b, a));
    }
}
