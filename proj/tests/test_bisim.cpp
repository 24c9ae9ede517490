#include <glocal/glocal.hpp>

#include <gtest/gtest.h>

using namespace glocal;

namespace {

using Pairs = std::set<std::pair<std::string, std::string>>;

Pairs labelled(const SimplicialModel& l, const SimplicialModel& r, const BisimRelation& rel) {
    Pairs out;
    for (auto [a, b] : rel.pairs()) out.emplace(l.facet_label({a}), r.facet_label({b}));
    return out;
}

std::set<std::pair<FacetId, FacetId>> rel(const SimplicialModel& l, const SimplicialModel& r, const Pairs& ps) {
    std::set<std::pair<FacetId, FacetId>> out;
    for (const auto& [a, b] : ps) out.emplace(l.point(a), r.point(b));
    return out;
}

} // namespace

TEST(Bisim, StatedRelationsAreBisimulations) {
    SimplicialModel left = simplicial_fixture("ex.bisim.left");
    SimplicialModel mid = simplicial_fixture("ex.bisim.mid");
    SimplicialModel right = simplicial_fixture("ex.bisim.right");
    EXPECT_FALSE(is_bisimulation(left, mid, rel(left, mid, {{"X", "Xp"}, {"X", "Zp"}, {"Y", "Yp"}})));
    EXPECT_FALSE(is_bisimulation(left, right, rel(left, right, {{"X", "Xpp"}, {"Y", "Ypp"}, {"Y", "Zpp"}})));
}

TEST(Bisim, IncompleteRelationReportsBackFailure) {
    SimplicialModel left = simplicial_fixture("ex.bisim.left");
    SimplicialModel mid = simplicial_fixture("ex.bisim.mid");
    auto v = is_bisimulation(left, mid, rel(left, mid, {{"X", "Xp"}, {"Y", "Yp"}}));
    ASSERT_TRUE(v);
    EXPECT_EQ(v->clause, BisimClause::Back);
    EXPECT_EQ(left.facet_label(v->left), "Y");
    EXPECT_EQ(mid.facet_label(v->right), "Yp");
    EXPECT_EQ(v->agent, "a");
    EXPECT_EQ(mid.facet_label(v->witness), "Zp");

    auto atoms = is_bisimulation(left, mid, rel(left, mid, {{"X", "Yp"}}));
    ASSERT_TRUE(atoms);
    EXPECT_EQ(atoms->clause, BisimClause::Atoms);
    auto empty = is_bisimulation(left, mid, {});
    ASSERT_TRUE(empty);
    EXPECT_EQ(empty->clause, BisimClause::Nonempty);
}

TEST(Bisim, MaximalRelationsAreTotal) {
    SimplicialModel left = simplicial_fixture("ex.bisim.left");
    SimplicialModel mid = simplicial_fixture("ex.bisim.mid");
    SimplicialModel right = simplicial_fixture("ex.bisim.right");
    BisimRelation lm = max_bisim(left, mid), lr = max_bisim(left, right), mr = max_bisim(mid, right);
    EXPECT_EQ(labelled(left, mid, lm), (Pairs{{"X", "Xp"}, {"X", "Zp"}, {"Y", "Yp"}}));
    EXPECT_EQ(labelled(left, right, lr), (Pairs{{"X", "Xpp"}, {"Y", "Ypp"}, {"Y", "Zpp"}}));
    EXPECT_TRUE(lm.total());
    EXPECT_TRUE(lr.total());
    EXPECT_TRUE(mr.total());
    // A maximal bisimulation passes the relation checker.
    std::set<std::pair<FacetId, FacetId>> pairs;
    for (auto [a, b] : mr.pairs()) pairs.emplace(FacetId{a}, FacetId{b});
    EXPECT_FALSE(is_bisimulation(mid, right, pairs));
}

TEST(Bisim, IntroductoryPairAndDistinguisher) {
    SimplicialModel c = simplicial_fixture("fig1.C"), cp = simplicial_fixture("fig1.Cp");
    FacetId y = c.point("Y"), yp = cp.point("Yp");
    EXPECT_FALSE(bisimilar(c, y, cp, yp));
    Formula d = distinguish(c, y, cp, yp);
    EXPECT_EQ(print(d), "<a> !alive(c)");
    BisimRelation r = max_bisim(c, cp);
    ASSERT_TRUE(r.cause(y.value, yp.value).has_value());
    EXPECT_EQ(r.cause(y.value, yp.value)->kind, RemovalKind::Forth);
    EXPECT_EQ(r.cause(c.point("X").value, yp.value)->kind, RemovalKind::Atoms);
    EXPECT_EQ(r.cause(c.point("X").value, yp.value)->round, 0);
    auto chain = explain(c, y, cp, yp, r);
    ASSERT_FALSE(chain.empty());
    EXPECT_NE(chain.front().find("forth"), std::string::npos) << chain.front();
    EXPECT_THROW(distinguish(c, y, c, y), Bisimilar);
}

TEST(Bisim, FarawayFamily) {
    for (int m = 1; m <= 3; ++m) {
        FarawayFamily fam = faraway_family(m);
        SimplicialModel c(fam.c), cp(fam.cp), cpp(fam.cpp);
        FacetId x = c.point("X");
        Formula w = faraway_witness(m);
        EXPECT_EQ(eval(c, x, w), TruthValue::True);
        EXPECT_NE(eval(cp, cp.point("X"), w), TruthValue::True);
        for (const SimplicialModel* other : {&cp, &cpp}) {
            FacetId x2 = other->point("X");
            EXPECT_FALSE(bisimilar(c, x, *other, x2));
            Formula d = distinguish(c, x, *other, x2);
            EXPECT_EQ(eval(c, x, d), TruthValue::True) << print(d);
            EXPECT_NE(eval(*other, x2, d), TruthValue::True) << print(d);
        }
    }
}

TEST(Bisim, SelfBisimulationIsTotal) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        SimplicialModel m(random_model(seed, 4, 8, 1));
        BisimRelation r = max_bisim(m, m);
        for (auto f : m.facets()) EXPECT_TRUE(r.contains(f, f));
    }
}

TEST(Bisim, RelationIsSymmetricUnderSwap) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        SimplicialModel a(random_model(seed, 3, 6, 1)), b(random_model(seed + 1000, 3, 6, 1));
        BisimRelation ab = max_bisim(a, b), ba = max_bisim(b, a);
        for (auto x : a.facets())
            for (auto y : b.facets()) EXPECT_EQ(ab.contains(x, y), ba.contains(y, x));
    }
}
