#include <glocal/glocal.hpp>

#include <gtest/gtest.h>

using namespace glocal;

namespace {

SimplicialModelData two_facets() {
    SimplicialModelData d;
    d.agents = {"a", "b", "c"};
    d.vertices = {{"a1", {"a", {"p"}}}, {"b0", {"b", {}}}, {"b1", {"b", {"p"}}}, {"c1", {"c", {"p"}}}};
    d.facets = {{"a1", "b0"}, {"a1", "b1", "c1"}};
    d.names = {{"X", {"a1", "b0"}}, {"Y", {"a1", "b1", "c1"}}};
    return d;
}

bool has_kind(const std::vector<Violation>& vs, ViolationKind k) {
    return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.kind == k; });
}

} // namespace

TEST(Model, ValidModelHasNoViolations) {
    EXPECT_TRUE(validate(two_facets()).empty());
    EXPECT_NO_THROW(SimplicialModel{two_facets()});
}

TEST(Model, ValidationKinds) {
    {
        auto d = two_facets();
        d.facets.push_back({"a1"});
        EXPECT_TRUE(has_kind(validate(d), ViolationKind::Maximality));
    }
    {
        auto d = two_facets();
        d.facets.push_back({"b0", "b1"});
        EXPECT_TRUE(has_kind(validate(d), ViolationKind::Chromatic));
    }
    {
        auto d = two_facets();
        d.facets.push_back({"zz"});
        EXPECT_TRUE(has_kind(validate(d), ViolationKind::UnknownVertex));
    }
    {
        auto d = two_facets();
        d.vertices["a9"] = {"a", {}};
        EXPECT_TRUE(has_kind(validate(d), ViolationKind::OrphanVertex));
    }
    {
        auto d = two_facets();
        d.vertices["q1"] = {"q", {}};
        d.facets.push_back({"q1"});
        EXPECT_TRUE(has_kind(validate(d), ViolationKind::UnknownAgent));
    }
    {
        auto d = two_facets();
        d.names["Z"] = {"a1"};
        EXPECT_TRUE(has_kind(validate(d), ViolationKind::BadAlias));
    }
    {
        auto d = two_facets();
        d.facets.clear();
        d.vertices.clear();
        d.names.clear();
        EXPECT_TRUE(has_kind(validate(d), ViolationKind::EmptyComplex));
    }
    {
        auto d = two_facets();
        d.agents.push_back("a");
        EXPECT_TRUE(has_kind(validate(d), ViolationKind::DuplicateAgent));
    }
    {
        auto d = two_facets();
        d.facets.push_back({"a1", "b0"});
        EXPECT_TRUE(has_kind(validate(d), ViolationKind::Maximality));
    }
    auto d = two_facets();
    d.facets.push_back({"a1"});
    EXPECT_THROW(SimplicialModel{d}, InvalidModel);
}

TEST(Model, PointsChiEllAndStars) {
    SimplicialModel m(two_facets());
    FacetId x = m.point("X"), y = m.point("Y");
    EXPECT_EQ(m.point("a1,b0"), x);
    EXPECT_EQ(m.point("{c1, b1, a1}"), y);
    EXPECT_THROW(m.point("nope"), PointNotFacet);
    EXPECT_THROW(m.point("a1"), PointNotFacet);
    EXPECT_THROW(m.point("a1,zz"), UnknownVertex);

    EXPECT_EQ(m.chi(x), (std::set<AgentId>{"a", "b"}));
    EXPECT_EQ(m.chi(y), (std::set<AgentId>{"a", "b", "c"}));
    EXPECT_EQ(m.ell(y), (std::set<LocalAtom>{{"p", "a"}, {"p", "b"}, {"p", "c"}}));
    EXPECT_EQ(m.ell(x), (std::set<LocalAtom>{{"p", "a"}}));

    EXPECT_EQ(m.star("a", x), (std::vector<FacetId>{x, y}));
    EXPECT_EQ(m.star("b", x), (std::vector<FacetId>{x}));
    EXPECT_TRUE(m.star("c", x).empty());
    EXPECT_TRUE(m.star("zzz", x).empty());
    EXPECT_EQ(m.dimension(), 2);
    EXPECT_FALSE(m.is_pure());
    EXPECT_EQ(m.facet_label(x), "X");
}

TEST(Model, CanonicalIndicesIgnoreInputOrder) {
    auto d = two_facets();
    auto e = d;
    std::reverse(e.facets.begin(), e.facets.end());
    for (auto& f : e.facets) std::reverse(f.begin(), f.end());
    SimplicialModel m(d), n(e);
    for (auto f : m.facets()) EXPECT_EQ(m.facet_vertex_names(f), n.facet_vertex_names(f));
}

TEST(Model, StarIsSymmetricAndReflexive) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        SimplicialModel m(random_model(seed, 4, 8, 2));
        for (auto f : m.facets())
            for (const auto& a : m.agents()) {
                auto st = m.star(a, f);
                bool alive = m.chi(f).count(a) > 0;
                EXPECT_EQ(alive, std::find(st.begin(), st.end(), f) != st.end());
                for (auto g : st) {
                    auto back = m.star(a, g);
                    EXPECT_NE(std::find(back.begin(), back.end(), f), back.end());
                }
            }
    }
}

TEST(JsonIo, SimplicialRoundTrip) {
    auto d = two_facets();
    json j = to_json(d);
    auto e = simplicial_from_json(j);
    EXPECT_EQ(dump(to_json(e)), dump(j));
    EXPECT_TRUE(std::holds_alternative<SimplicialModelData>(model_from_json(j)));
}

TEST(JsonIo, KripkeRoundTrip) {
    auto d = detail::fig1_m();
    json j = to_json(d);
    auto e = kripke_from_json(j);
    EXPECT_EQ(dump(to_json(e)), dump(j));
    EXPECT_TRUE(std::holds_alternative<PartialEpistemicModelData>(model_from_json(j)));
}

TEST(JsonIo, Malformed) {
    EXPECT_THROW(model_from_json(json::parse(R"({"agents": ["a"]})")), FormatError);
    EXPECT_THROW(simplicial_from_json(json::parse(R"({"agents": "a", "facets": []})")), FormatError);
    EXPECT_THROW(kripke_from_json(json::parse(R"({"agents": ["a"], "states": {"s": {"atoms": ["p"]}}})")),
                 FormatError);
    EXPECT_THROW(read_json_file("/nonexistent/model.json"), Error);
}
