#include <gtest/gtest.h>

#include "modbgg/bggkit.hpp"

using namespace modbgg;

namespace {

KElement W(const Weight& w) { return KElement(ver_w(w)); }
KElement L(const Weight& w) { return KElement(ver_l(w)); }

std::vector<std::vector<VermaClass>> classes_by_degree(const FilteredComplex& c) {
    std::vector<std::vector<VermaClass>> out;
    for (const auto& t : c.terms) out.push_back(t.classes());
    return out;
}

}  // namespace

TEST(Bggkit, Gl3TopPieceAtThirteen) {
    const auto d = gl3();
    const auto spec = build_bgg_gl3(d, 13, Weight{5, 3, 1});
    const auto& top = spec.piece("F2");
    EXPECT_TRUE(top.terms[0].empty());
    EXPECT_EQ(top.terms[1].classes(), std::vector<VermaClass>{ver_w(Weight{5, 3, 1})});
    EXPECT_EQ(top.terms[2].classes(), std::vector<VermaClass>{ver_w(Weight{12, 3, -6})});
    const auto f = orbit_family(d, 13, Weight{5, 3, 1});
    EXPECT_EQ(spec.piece("gr1").terms[1].classes(), std::vector<VermaClass>{ver_l(f["mu1"])});
}

TEST(Bggkit, EulerCharacteristicIsTheSimpleClass) {
    const auto g3 = gl3(), g4 = gsp4();
    for (Int p : {11, 13, 17}) {
        for (const auto& l0 : lowest_alcove_cells(g3, p)) {
            if (!classify(g3, p, l0).regular()) continue;
            const auto f = orbit_family(g3, p, l0);
            EXPECT_EQ(euler_characteristic(build_bgg_gl3(g3, p, l0)), simple_char_in_vermas(g3, p, f["lambda1"]));
        }
        for (const auto& l0 : lowest_alcove_cells(g4, p)) {
            if (!classify(g4, p, l0).regular()) continue;
            const auto f = orbit_family(g4, p, l0);
            EXPECT_EQ(euler_characteristic(build_bgg_gsp4_c1(g4, p, l0)), simple_char_in_vermas(g4, p, f["lambda1"]));
        }
    }
}

TEST(Bggkit, SecondAlcoveEulerCharacteristicMatchesPrintedExpression) {
    const auto d = gsp4();
    const auto f = orbit_family(d, 13, Weight{4, 2});
    const KElement expect = W(f["lambda2"]) - W(f["lambda1"]) - L(f["mu2"]) + L(f["mu1"]) + L(f["nu2"]) -
                            L(f["nu1"]) - W(f["epsilon2"]) + W(f["epsilon1"]);
    const auto spec = build_bgg_gsp4_c2(d, 13, Weight{4, 2});
    EXPECT_EQ(euler_characteristic(spec), expect);
    EXPECT_EQ(euler_characteristic(spec), simple_char_in_vermas(d, 13, f["lambda2"]));
}

TEST(Bggkit, Gsp4FirstAlcoveLayout) {
    const auto d = gsp4();
    const auto f = orbit_family(d, 13, Weight{4, 2});
    const auto spec = build_bgg_gsp4_c1(d, 13, Weight{4, 2});
    ASSERT_EQ(spec.pieces.size(), 4u);
    EXPECT_EQ(spec.pieces[0].first, "F3");
    EXPECT_EQ(spec.piece("F3").terms[3].classes(), std::vector<VermaClass>{ver_w(f["lambda1"])});
    EXPECT_EQ(spec.piece("gr2").terms[2].classes(), std::vector<VermaClass>{ver_l(f["mu1"])});
    EXPECT_EQ(spec.piece("gr1").terms[1].classes(), std::vector<VermaClass>{ver_l(f["nu1"])});
    const auto& gr0 = spec.piece("gr0");
    EXPECT_EQ(gr0.terms[0].classes(), std::vector<VermaClass>{ver_w(f["epsilon1"])});
    EXPECT_EQ(gr0.terms[1].classes(), std::vector<VermaClass>{ver_w(f["epsilon0"])});
}

TEST(Bggkit, BuiltComplexesValidate) {
    const auto d = gsp4();
    for (Int p : {13, 17})
        for (const auto& l0 : lowest_alcove_cells(d, p)) {
            if (!classify(d, p, l0).regular()) continue;
            EXPECT_TRUE(validate_filtration(d, p, build_bgg_gsp4_c1(d, p, l0).total()).clean()) << l0.str();
            const auto f = orbit_family(d, p, l0);
            if (named_alcove(d, p, f["lambda2"]) == 2) {
                auto r = validate_filtration(d, p, build_bgg_gsp4_c2(d, p, l0).total());
                EXPECT_TRUE(r.clean()) << l0.str() << (r.issues.empty() ? "" : r.issues.front().message);
            }
        }
}

TEST(Bggkit, ValidationCatchesBadOrderAndBadLinkage) {
    const auto d = gsp4();
    const auto f = orbit_family(d, 13, Weight{4, 2});
    auto bad_order = FilteredComplex::empty_of(3);
    bad_order.put(3, {{ver_w(f["lambda0"])}, {ver_w(f["lambda2"])}});
    EXPECT_FALSE(validate_filtration(d, 13, bad_order).clean());

    auto bad_link = FilteredComplex::empty_of(3);
    bad_link.put(2, {{ver_w(f["lambda1"])}}).put(3, {{ver_w(f["lambda0"])}});
    bad_link.differentials.push_back({2, DiffKind::Theta, ver_w(f["lambda1"]), ver_w(f["lambda0"]), "downward"});
    EXPECT_FALSE(validate_filtration(d, 13, bad_link).clean());

    auto no_ends = FilteredComplex::empty_of(1);
    no_ends.differentials.push_back({0, DiffKind::UniqueNonzero, std::nullopt, std::nullopt, ""});
    EXPECT_FALSE(validate_filtration(d, 13, no_ends).clean());
}

TEST(Bggkit, DualityTwists) {
    EXPECT_EQ(duality_twist(gl3(), 13, Weight{5, 3, 1}), (Weight{-1, -1, 2}));
    for (const auto& l0 : lowest_alcove_cells(gsp4(), 13))
        if (classify(gsp4(), 13, l0).regular()) {
            EXPECT_EQ(duality_twist(gsp4(), 13, l0), (Weight{-3, -3}));
        }
}

TEST(Bggkit, SerreDualIsAnInvolution) {
    const auto d = gsp4();
    const Weight twist = duality_twist(d, 13, Weight{4, 2});
    const auto c = build_bgg_gsp4_c2(d, 13, Weight{4, 2}).total();
    const auto cc = serre_dual(d, twist, serre_dual(d, twist, c));
    EXPECT_EQ(classes_by_degree(cc), classes_by_degree(c));
    for (std::size_t i = 0; i < c.differentials.size(); ++i) {
        EXPECT_EQ(cc.differentials[i].from_degree, c.differentials[i].from_degree);
        EXPECT_EQ(cc.differentials[i].source, c.differentials[i].source);
        EXPECT_EQ(cc.differentials[i].target, c.differentials[i].target);
    }
}

TEST(Bggkit, Gl3DualPieceSwapsFamilies) {
    // gr0 is the dual of the dual family's top piece: degrees 0 and 1 hold nu1 and nu0.
    const auto d = gl3();
    const auto f = orbit_family(d, 13, Weight{5, 3, 1});
    const auto spec = build_bgg_gl3(d, 13, Weight{5, 3, 1});
    const auto& gr0 = spec.piece("gr0");
    EXPECT_EQ(gr0.terms[0].classes(), std::vector<VermaClass>{ver_w(f["nu1"])});
    EXPECT_EQ(gr0.terms[1].classes(), std::vector<VermaClass>{ver_w(f["nu0"])});
}

TEST(Bggkit, RejectsWrongGroupsAndAlcoves) {
    EXPECT_THROW(build_bgg_gl3(gsp4(), 13, Weight{4, 2}), std::invalid_argument);
    EXPECT_THROW(build_bgg_gsp4_c1(gl3(), 13, Weight{5, 3, 1}), std::invalid_argument);
    EXPECT_THROW(build_bgg_gsp4_c1(gsp4(), 13, Weight{5, 5}), std::invalid_argument);
    EXPECT_THROW(build_bgg_gsp4_c2(gsp4(), 13, Weight{8, 6}), std::invalid_argument);
}

TEST(Bggkit, SecondAlcoveConstructionCoversEveryRegularCell) {
    const auto d = gsp4();
    for (Int p : {11, 13, 17})
        for (const auto& l0 : lowest_alcove_cells(d, p)) {
            if (!classify(d, p, l0).regular()) continue;
            EXPECT_EQ(named_alcove(d, p, orbit_family(d, p, l0)["lambda2"]), 2) << l0.str();
            EXPECT_NO_THROW(build_bgg_gsp4_c2(d, p, l0));
        }
}
