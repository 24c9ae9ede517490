#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace glocal;

namespace {

constexpr TruthValue T = TruthValue::True, F = TruthValue::False, U = TruthValue::Undef;

TruthValue at(const SimplicialModel& m, const char* point, const char* formula) {
    return eval(m, m.point(point), parse(formula));
}

} // namespace

TEST(Pwk, Tables) {
    EXPECT_EQ(!T, F);
    EXPECT_EQ(!F, T);
    EXPECT_EQ(!U, U);
    EXPECT_EQ(T && T, T);
    EXPECT_EQ(T && F, F);
    EXPECT_EQ(F && F, F);
    // Undefinedness is contagious even against False.
    EXPECT_EQ(F && U, U);
    EXPECT_EQ(U && F, U);
    EXPECT_EQ(U && T, U);
}

TEST(Semantics, DeadAgentJudgments) {
    SimplicialModel c = simplicial_fixture("fig1.C");
    EXPECT_EQ(at(c, "X", "p@c"), U);
    EXPECT_EQ(at(c, "X", "!p@c"), U);
    EXPECT_EQ(at(c, "X", "<c> p@a"), U);
    EXPECT_EQ(at(c, "X", "!<c> p@a"), U);
    EXPECT_EQ(at(c, "X", "<a> p@c"), T);
    EXPECT_EQ(at(c, "X", "[a] p@c"), T);
    EXPECT_EQ(at(c, "X", "alive(c)"), F);
    EXPECT_EQ(at(c, "X", "alive(a)"), T);
    EXPECT_EQ(at(c, "X", "p@a"), T);
    EXPECT_EQ(at(c, "X", "p@b"), F);
    EXPECT_EQ(at(c, "Y", "<a> !alive(c)"), T);
    SimplicialModel cp = simplicial_fixture("fig1.Cp");
    EXPECT_EQ(at(cp, "Yp", "<a> !alive(c)"), F);
}

TEST(Semantics, UnknownAgentCountsAsDead) {
    SimplicialModel c = simplicial_fixture("fig1.C");
    EXPECT_EQ(at(c, "X", "alive(z)"), F);
    EXPECT_EQ(at(c, "X", "p@z"), U);
    EXPECT_EQ(at(c, "X", "<z> alive(a)"), U);
}

TEST(Semantics, DenotationAndDefines) {
    SimplicialModel c = simplicial_fixture("fig1.C");
    EXPECT_EQ(denotation(c, parse("alive(c)")), (std::vector<FacetId>{c.point("Y")}));
    EXPECT_FALSE(defines(c, c.point("X"), parse("p@c")));
    EXPECT_TRUE(satisfies(c, c.point("X"), parse("<a> p@c")));
    EXPECT_THROW(eval(c, FacetId{7}, parse("p@a")), PointNotFacet);
}

TEST(Semantics, EvaluatorMatchesNaiveOracle) {
    Vocabulary v = Vocabulary::uniform({"a", "b", "c"}, {"p", "q"});
    auto formulas = enumerate_formulas(v, 2, 5, Fragment::Lplus);
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        SimplicialModelData d = random_model(seed, 3, 6, 2);
        SimplicialModel m(d);
        oracle::NaiveModel naive(d);
        Evaluator ev(m);
        for (const auto& f : formulas)
            for (std::size_t i = 0; i < naive.size(); ++i)
                ASSERT_EQ(ev.at(oracle::library_facet(m, d, i).value, f), naive.eval(i, f))
                    << "seed " << seed << " facet " << i << " " << print(f);
    }
}

TEST(Semantics, DerivedConnectives) {
    SimplicialModel c = simplicial_fixture("fig1.C");
    Evaluator ev(c);
    auto formulas = enumerate_formulas(vocabulary_of(c), 1, 3, Fragment::Lplus);
    for (auto x : c.facets())
        for (const auto& f : formulas)
            for (const auto& g : formulas) {
                TruthValue a = ev.at(x.value, f), b = ev.at(x.value, g);
                EXPECT_EQ(ev.at(x.value, disj(f, g)), !(!a && !b));
                EXPECT_EQ(ev.at(x.value, implies(f, g)), !(a && !b));
            }
    for (auto x : c.facets()) {
        EXPECT_EQ(ev.at(x.value, top("a")), T);
        EXPECT_EQ(ev.at(x.value, bot("c")), F);
    }
}

TEST(Semantics, Invariants) {
    Vocabulary v = Vocabulary::uniform({"a", "b", "c"}, {"p"});
    auto formulas = enumerate_formulas(v, 2, 5, Fragment::Lplus);
    for (std::uint64_t seed = 100; seed < 160; ++seed) {
        SimplicialModel m(random_model(seed, 3, 6, 1));
        Evaluator ev(m);
        for (auto x : m.facets())
            for (const auto& f : formulas) {
                TruthValue val = ev.at(x.value, f);
                // Definedness of a formula never depends on negation.
                EXPECT_EQ(is_defined(ev.at(x.value, neg(f))), is_defined(val));
                // Global atoms are always defined; local atoms of live agents too.
                if (f.kind() == FormulaKind::GlobalAtom) {
                    EXPECT_TRUE(is_defined(val));
                }
                if (f.kind() == FormulaKind::Local) {
                    EXPECT_EQ(is_defined(val), m.chi(x).count(f.atom().agent) > 0);
                }
                // Modalities of dead agents are undefined.
                for (const auto& a : m.agents())
                    if (!m.chi(x).count(a)) {
                        EXPECT_EQ(ev.at(x.value, diamond(a, f)), U);
                    }
                // Factivity wherever the known formula is defined.
                for (const auto& a : m.agents())
                    if (ev.at(x.value, box(a, f)) == T && is_defined(val)) {
                        EXPECT_EQ(val, T) << print(f);
                    }
            }
    }
}

TEST(ModalEquivalence, CriterionOnTheIntroductoryPair) {
    SimplicialModel c = simplicial_fixture("fig1.C"), cp = simplicial_fixture("fig1.Cp");
    Vocabulary v = Vocabulary::uniform({"a", "b", "c"}, {"p"});
    auto lminus = modal_equiv_bounded(c, c.point("Y"), cp, cp.point("Yp"), v, 2, 6, Fragment::Lminus);
    EXPECT_TRUE(lminus.equal);
    EXPECT_EQ(lminus.formulas_checked, 2534u);
    auto lplus = modal_equiv_bounded(c, c.point("Y"), cp, cp.point("Yp"), v, 1, 3, Fragment::Lplus);
    ASSERT_FALSE(lplus.equal);
    EXPECT_EQ(print(*lplus.witness), "<a> !alive(c)");
    EXPECT_EQ(lplus.left_value, T);
    EXPECT_EQ(lplus.right_value, F);
    EXPECT_EQ(lplus.formulas_checked, 66u);
}

TEST(ModalEquivalence, ReflexiveAndBudget) {
    SimplicialModel c = simplicial_fixture("fig4.C");
    Vocabulary v = vocabulary_of(c);
    for (auto x : c.facets()) EXPECT_TRUE(modal_equiv_bounded(c, x, c, x, v, 2, 4, Fragment::Lplus).equal);
    EXPECT_THROW(modal_equiv_bounded(c, c.point("X"), c, c.point("X"), v, 2, 6, Fragment::Lplus, 100), BudgetExceeded);
}
