#include <glocal/glocal.hpp>

#include <gtest/gtest.h>

using namespace glocal;

namespace {

/// Nested rendering: {labels}[edge:child ...], children in stored order.
std::string shape(const LifeTree& t, int n = 0) {
    const auto& node = t[static_cast<std::size_t>(n)];
    std::string s = "{";
    bool first = true;
    for (const auto& a : node.label) {
        s += (first ? "" : ",") + a;
        first = false;
    }
    s += "}";
    if (!node.children.empty()) {
        s += "[";
        for (std::size_t i = 0; i < node.children.size(); ++i) {
            int c = node.children[i];
            s += (i ? " " : "") + t[static_cast<std::size_t>(c)].edge + ":" + shape(t, c);
        }
        s += "]";
    }
    return s;
}

LifeTree tree(const char* f) { return life_tree(parse(f)); }

/// Checks the embedding conditions for an assignment directly.
bool valid_embedding(const SimplicialModel& m, FacetId x, const LifeTree& t, const Embedding& e) {
    if (e.assignment.size() != t.size() || e.assignment[0] != x) return false;
    for (std::size_t i = 0; i < t.size(); ++i) {
        auto chi = m.chi(e.assignment[i]);
        for (const auto& a : t[i].label)
            if (!chi.count(a)) return false;
        if (t[i].parent >= 0) {
            auto st = m.star(t[i].edge, e.assignment[static_cast<std::size_t>(t[i].parent)]);
            if (std::find(st.begin(), st.end(), e.assignment[i]) == st.end()) return false;
        }
    }
    return true;
}

} // namespace

TEST(LifeTree, BaseCases) {
    EXPECT_EQ(shape(tree("alive(a)")), "{}");
    EXPECT_EQ(shape(tree("p@a")), "{a}");
    EXPECT_EQ(shape(tree("!!p@a")), "{a}");
    EXPECT_EQ(shape(tree("p@a & alive(b) & q@c")), "{a,c}");
    EXPECT_EQ(shape(tree("<a> alive(b)")), "{a}[a:{a}]");
    EXPECT_EQ(shape(graft(tree("p@b"), "a")), "{a,b}");
}

TEST(LifeTree, SampleFigure) {
    const auto& nf = named_formulas();
    EXPECT_EQ(shape(tree(nf.at("lifetree.1").c_str())), "{b,c}[b:{b,d} c:{c,d}]");
    EXPECT_EQ(shape(tree(nf.at("lifetree.2").c_str())), "{a}[a:{a,b,c}[b:{b,d} c:{c,d}]]");
    EXPECT_EQ(shape(tree(nf.at("lifetree.3").c_str())), "{a}[a:{a,b}[b:{b,d}] a:{a,c}[c:{c,d}]]");
}

TEST(LifeTree, GraftedSubtree) {
    // The a-grafted tree of the first sample sits below the root of the second.
    LifeTree t1 = graft(tree("<b> !p@d & <c> p@d"), "a");
    LifeTree t2 = tree("<a>(<b> !p@d & <c> p@d)");
    EXPECT_EQ("{a}[a:" + shape(t1) + "]", shape(t2));
}

TEST(LifeTree, TagsAndCoherence) {
    LifeTree t = tree("<a><b> !p@d & <a><c> p@d");
    EXPECT_TRUE(t.coherent());
    EXPECT_FALSE(t.root().tag.has_value());
    std::set<std::string> tags;
    for (std::size_t i = 1; i < t.size(); ++i) {
        ASSERT_TRUE(t[i].tag.has_value());
        tags.insert(print(*t[i].tag));
    }
    EXPECT_EQ(tags, (std::set<std::string>{"<b> !p@d", "<c> p@d", "!p@d", "p@d"}));
    Vocabulary v = Vocabulary::uniform({"a", "b", "c"}, {"p"});
    FormulaEnumerator(v, 3, 6, Fragment::Lplus).for_each([](const Formula& f) {
        EXPECT_TRUE(life_tree(f).coherent()) << print(f);
        return true;
    });
}

TEST(LifeTree, Dot) {
    std::string d = to_dot(tree("<a>(<b> !p@d & <c> p@d)"), "t");
    EXPECT_NE(d.find("digraph t {"), std::string::npos);
    EXPECT_NE(d.find("label=\"{a,b,c}\""), std::string::npos);
    EXPECT_NE(d.find("n1 -> n2 [label=\"b\"]"), std::string::npos);
}

TEST(Embed, Fig4) {
    SimplicialModel c = simplicial_fixture("fig4.C");
    FacetId x = c.point("X");
    Formula phi = parse(named_formulas().at("fig4.phi"));
    EXPECT_EQ(eval(c, x, phi), TruthValue::Undef);
    EmbedResult r = embed(c, x, life_tree(phi));
    ASSERT_FALSE(r);
    ASSERT_TRUE(r.failure->missing_agents.empty());
    ASSERT_TRUE(r.failure->child.has_value());
    EXPECT_EQ(r.failure->edge, "c");
    EXPECT_EQ(print(*life_tree(phi)[static_cast<std::size_t>(*r.failure->child)].tag), "<d> p@a");

    Formula ok = parse("p@b & <c> p@d");
    EmbedResult e = embed(c, x, life_tree(ok));
    ASSERT_TRUE(e);
    EXPECT_TRUE(valid_embedding(c, x, life_tree(ok), *e.embedding));

    EmbedResult root = embed(c, c.point("Y2"), life_tree(parse("p@a & p@b")));
    ASSERT_FALSE(root);
    EXPECT_FALSE(root.failure->missing_agents.empty());
}

TEST(Embed, EquivalentToDefinabilityOnSamples) {
    Vocabulary v = Vocabulary::uniform({"a", "b", "c"}, {"p"});
    auto formulas = enumerate_formulas(v, 2, 5, Fragment::Lplus);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        SimplicialModel m(random_model(seed, 3, 6, 1));
        for (auto x : m.facets())
            for (const auto& f : formulas) {
                LifeTree t = life_tree(f);
                EmbedResult r = embed(m, x, t);
                ASSERT_EQ(static_cast<bool>(r), defines(m, x, f)) << "seed " << seed << " " << print(f);
                if (r) {
                    EXPECT_TRUE(valid_embedding(m, x, t, *r.embedding));
                }
            }
    }
}

TEST(Transform, Fig4Orderings) {
    SimplicialModel c = simplicial_fixture("fig4.C");
    FacetId x = c.point("X");
    Formula phi = parse(named_formulas().at("fig4.phi"));

    OrderingPolicy y2_first{{c.point("Y2"), c.point("X"), c.point("Y3")}};
    OrderingPolicy x_first{{c.point("X"), c.point("Y2"), c.point("Y3")}};
    Formula f1 = transform(c, x, phi, y2_first);
    Formula f2 = transform(c, x, phi, x_first);
    EXPECT_EQ(print(f1), "<c><d> alive(a)");
    EXPECT_EQ(print(f2), "<c>(alive(d) & <d> alive(a))");
    EXPECT_EQ(transform(c, x, phi), f2);

    for (const Formula& f : {f1, f2}) {
        EXPECT_EQ(eval(c, x, neg(f)), TruthValue::True);
        for (const auto& id : fixture_ids()) {
            if (!fixture(id).is_simplicial()) continue;
            SimplicialModel m = simplicial_fixture(id);
            for (auto y : m.facets())
                if (defines(m, y, phi)) {
                    EXPECT_EQ(eval(m, y, f), TruthValue::True) << id;
                }
        }
    }
}

TEST(Transform, RootLabelCase) {
    SimplicialModel c = simplicial_fixture("fig1.C");
    EXPECT_EQ(print(transform(c, c.point("X"), parse("p@c"))), "alive(c)");
    EXPECT_EQ(print(transform(c, c.point("X"), parse("p@c & <a> p@b"))), "alive(a) & alive(c)");
}

TEST(Transform, RejectsDefinedFormula) {
    SimplicialModel c = simplicial_fixture("fig1.C");
    EXPECT_THROW(transform(c, c.point("X"), parse("<a> p@c")), AlreadyDefined);
}

TEST(Transform, PostconditionsOnRandomModels) {
    Vocabulary v = Vocabulary::uniform({"a", "b", "c"}, {"p"});
    auto formulas = enumerate_formulas(v, 2, 5, Fragment::Lplus);
    std::vector<SimplicialModel> models;
    for (std::uint64_t seed = 0; seed < 30; ++seed) models.emplace_back(random_model(seed, 3, 5, 1));
    std::size_t checked = 0;
    for (const auto& m : models)
        for (auto x : m.facets())
            for (const auto& f : formulas) {
                if (defines(m, x, f)) continue;
                Formula g = transform(m, x, f);
                ++checked;
                ASSERT_EQ(eval(m, x, neg(g)), TruthValue::True) << print(f) << " -> " << print(g);
                for (const auto& n : models) {
                    Evaluator ef(n), eg(n);
                    auto vf = ef.values(f);
                    auto vg = eg.values(g);
                    for (std::size_t y = 0; y < n.facet_count(); ++y)
                        if (is_defined(vf[y])) {
                            ASSERT_EQ(vg[y], TruthValue::True) << print(f) << " -> " << print(g);
                        }
                }
            }
    EXPECT_GT(checked, 100u);
}
