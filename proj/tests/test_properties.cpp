#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace glocal;

namespace {

Vocabulary joint_vocabulary(const SimplicialModel& a, const SimplicialModel& b) {
    std::set<AgentId> agents(a.agents().begin(), a.agents().end());
    agents.insert(b.agents().begin(), b.agents().end());
    return Vocabulary::uniform({agents.begin(), agents.end()}, {"p"});
}

} // namespace

TEST(Properties, BisimilarPointsAgreeAndOthersAreSplit) {
    std::size_t related = 0, split = 0;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        SimplicialModel l(random_model(2 * seed, 3, 6, 1)), r(random_model(2 * seed + 1, 3, 6, 1));
        BisimRelation rel = max_bisim(l, r);
        Evaluator el(l), er(r);
        auto formulas = enumerate_formulas(joint_vocabulary(l, r), 2, 5, Fragment::Lplus);
        for (auto x : l.facets())
            for (auto y : r.facets()) {
                if (rel.contains(x, y)) {
                    ++related;
                    for (const auto& f : formulas)
                        ASSERT_EQ(el.at(x.value, f), er.at(y.value, f)) << seed << " " << print(f);
                } else {
                    ++split;
                    Formula d = distinguish(l, x, r, y);
                    ASSERT_EQ(eval(l, x, d), TruthValue::True) << seed << " " << print(d);
                    ASSERT_NE(eval(r, y, d), TruthValue::True) << seed << " " << print(d);
                }
            }
    }
    EXPECT_GT(related, 20u);
    EXPECT_GT(split, 200u);
}

TEST(Properties, CorrespondenceOnRandomModels) {
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        CorrespondenceReport a = correspondence_check(SimplicialModel(random_model(seed, 3, 6, 1)), {2, 4});
        EXPECT_TRUE(a.ok()) << seed << (a.failures.empty() ? "" : ": " + a.failures.front());
        CorrespondenceReport b = correspondence_check(PartialEpistemicModel(random_kripke(seed, 3, 6, 1)), {2, 4});
        EXPECT_TRUE(b.ok()) << seed << (b.failures.empty() ? "" : ": " + b.failures.front());
    }
}

TEST(Properties, KripkeEvaluationMatchesNaiveOracleThroughSigma) {
    Vocabulary v = Vocabulary::uniform({"a", "b", "c"}, {"p"});
    auto formulas = enumerate_formulas(v, 2, 5, Fragment::Lplus);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        PartialEpistemicModel m(random_kripke(seed, 3, 5, 1));
        SigmaResult s = sigma(m);
        SimplicialModelData d = s.model.data();
        oracle::NaiveModel naive(d);
        for (std::uint32_t st = 0; st < m.state_count(); ++st) {
            std::size_t i = 0;
            while (oracle::library_facet(s.model, d, i) != s.facet_of_state[st]) ++i;
            for (const auto& f : formulas) ASSERT_EQ(eval_kripke(m, {st}, f), naive.eval(i, f)) << print(f);
        }
    }
}

TEST(Properties, NoUniformUndefinednessFormula) {
    // Candidate formulas that are true exactly where p@a & [b] p@c is undefined, over every corpus point.
    Formula phi = parse(named_formulas().at("nouniform.phi"));
    std::vector<SimplicialModel> models;
    for (const auto& id : fixture_ids())
        if (fixture(id).is_simplicial()) models.push_back(simplicial_fixture(id));
    std::vector<Evaluator> evs;
    for (const auto& m : models) evs.emplace_back(m);
    std::vector<std::vector<TruthValue>> phi_vals;
    for (auto& e : evs) {
        auto v = e.values(phi);
        phi_vals.emplace_back(v.begin(), v.end());
    }
    std::size_t uniform = 0;
    FormulaEnumerator(Vocabulary::uniform({"a", "b", "c"}, {"p"}), 2, 6, Fragment::Lplus).for_each([&](const Formula& f) {
        for (std::size_t k = 0; k < models.size(); ++k) {
            auto v = evs[k].values(f);
            for (std::size_t x = 0; x < v.size(); ++x)
                if ((phi_vals[k][x] == TruthValue::Undef) != (v[x] == TruthValue::True)) return true;
        }
        ++uniform;
        return true;
    });
    EXPECT_EQ(uniform, 0u);

    // The transformation itself depends on the model.
    SimplicialModel c = simplicial_fixture("nouniform.C"), dead = simplicial_fixture("nouniform.deadA");
    EXPECT_NE(transform(c, c.point("X"), phi), transform(dead, dead.point("X"), phi));
}
