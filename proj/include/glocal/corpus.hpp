#pragma once

// Fixture naming: a vertex `a1` is agent a with atom p true, `a0` the same agent with p false;
// a suffix `_2` marks a second vertex with the same label. Primed points are spelled `Xp`, `Xpp`.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "formula.hpp"
#include "kripke.hpp"
#include "model.hpp"

namespace glocal {

using ModelPayload = std::variant<SimplicialModelData, PartialEpistemicModelData>;

struct Fixture {
    std::string id;
    std::string description;
    ModelPayload payload;

    bool is_simplicial() const noexcept { return std::holds_alternative<SimplicialModelData>(payload); }
    const SimplicialModelData& simplicial() const { return std::get<SimplicialModelData>(payload); }
    const PartialEpistemicModelData& kripke() const { return std::get<PartialEpistemicModelData>(payload); }
};

namespace detail {

/// Builder for small hand-written simplicial models.
class ComplexBuilder {
public:
    explicit ComplexBuilder(std::vector<AgentId> agents) { d_.agents = std::move(agents); }

    /// Vertex `name` of `agent`; `p` says whether atom p holds there.
    ComplexBuilder& vertex(const VertexId& name, const AgentId& agent, bool p) {
        VertexData v{agent, {}};
        if (p) v.atoms.insert("p");
        d_.vertices[name] = std::move(v);
        return *this;
    }

    ComplexBuilder& facet(std::vector<VertexId> vs, const std::string& alias = {}) {
        if (!alias.empty()) d_.names[alias] = vs;
        d_.facets.push_back(std::move(vs));
        return *this;
    }

    SimplicialModelData build() const { return d_; }

private:
    SimplicialModelData d_;
};

class KripkeBuilder {
public:
    explicit KripkeBuilder(std::vector<AgentId> agents) { d_.agents = std::move(agents); }

    /// State with live agents and the local atoms `p@x` listed in `p_true`.
    KripkeBuilder& state(const std::string& name, std::set<AgentId> alive, const std::vector<AgentId>& p_true) {
        StateData s{std::move(alive), {}};
        for (const auto& a : p_true) s.atoms.insert({"p", a});
        d_.states[name] = std::move(s);
        return *this;
    }

    KripkeBuilder& block(const AgentId& a, std::vector<std::string> states) {
        d_.relations[a].push_back(std::move(states));
        return *this;
    }

    PartialEpistemicModelData build() const { return d_; }

private:
    PartialEpistemicModelData d_;
};

inline SimplicialModelData fig1_c() {
    return ComplexBuilder({"a", "b", "c"})
        .vertex("a1", "a", true)
        .vertex("b0", "b", false)
        .vertex("b0_2", "b", false)
        .vertex("c1", "c", true)
        .facet({"a1", "b0"}, "X")
        .facet({"a1", "b0_2", "c1"}, "Y")
        .build();
}

inline SimplicialModelData fig1_cp() {
    return ComplexBuilder({"a", "b", "c"})
        .vertex("a1", "a", true)
        .vertex("b0", "b", false)
        .vertex("c1", "c", true)
        .facet({"a1", "b0", "c1"}, "Yp")
        .build();
}

// The dead agent c has no atom at X.
inline PartialEpistemicModelData fig1_m() {
    return KripkeBuilder({"a", "b", "c"})
        .state("X", {"a", "b"}, {"a"})
        .state("Y", {"a", "b", "c"}, {"a", "c"})
        .block("a", {"X", "Y"})
        .block("b", {"X"})
        .block("b", {"Y"})
        .block("c", {"Y"})
        .build();
}

inline PartialEpistemicModelData fig1_mp() {
    return KripkeBuilder({"a", "b", "c"})
        .state("Yp", {"a", "b", "c"}, {"a", "c"})
        .block("a", {"Yp"})
        .block("b", {"Yp"})
        .block("c", {"Yp"})
        .build();
}

inline ComplexBuilder bisim_base(const std::string& prime) {
    ComplexBuilder b({"a", "b", "c"});
    b.vertex("a0", "a", false)
        .vertex("b1", "b", true)
        .vertex("b0", "b", false)
        .vertex("c1", "c", true)
        .facet({"b1", "a0"}, "X" + prime)
        .facet({"a0", "b0", "c1"}, "Y" + prime);
    return b;
}

inline SimplicialModelData bisim_left() { return bisim_base("").build(); }

inline SimplicialModelData bisim_mid() {
    return bisim_base("p").vertex("b1_2", "b", true).facet({"a0", "b1_2"}, "Zp").build();
}

inline SimplicialModelData bisim_right() {
    return bisim_base("pp").vertex("c1_2", "c", true).facet({"a0", "b0", "c1_2"}, "Zpp").build();
}

// Dead-agent atoms: p@c false at X and Xp, true at Zp and Xpp.
inline PartialEpistemicModelData bisim2_m() {
    return KripkeBuilder({"a", "b", "c"})
        .state("X", {"a", "b"}, {"b"})
        .state("Y", {"a", "b", "c"}, {"c"})
        .block("a", {"X", "Y"})
        .block("b", {"X"})
        .block("b", {"Y"})
        .block("c", {"Y"})
        .build();
}

inline PartialEpistemicModelData bisim2_mp() {
    return KripkeBuilder({"a", "b", "c"})
        .state("Xp", {"a", "b"}, {"b"})
        .state("Yp", {"a", "b", "c"}, {"c"})
        .state("Zp", {"a", "b"}, {"b", "c"})
        .block("a", {"Xp", "Yp", "Zp"})
        .block("b", {"Xp"})
        .block("b", {"Yp"})
        .block("b", {"Zp"})
        .block("c", {"Yp"})
        .build();
}

inline PartialEpistemicModelData bisim2_mpp() {
    return KripkeBuilder({"a", "b", "c"})
        .state("Xpp", {"a", "b"}, {"b", "c"})
        .state("Ypp", {"a", "b", "c"}, {"c"})
        .state("Zpp", {"a", "b", "c"}, {"c"})
        .block("a", {"Xpp", "Ypp", "Zpp"})
        .block("b", {"Xpp"})
        .block("b", {"Ypp", "Zpp"})
        .block("c", {"Ypp"})
        .block("c", {"Zpp"})
        .build();
}

inline SimplicialModelData fig4_c() {
    return ComplexBuilder({"a", "b", "c", "d", "e"})
        .vertex("a1", "a", true)
        .vertex("a0", "a", false)
        .vertex("b0", "b", false)
        .vertex("c1", "c", true)
        .vertex("d0", "d", false)
        .vertex("e1", "e", true)
        .facet({"a1", "b0", "c1"}, "X")
        .facet({"c1", "d0"}, "Y2")
        .facet({"c1", "e1"}, "Y3")
        .facet({"a0", "e1"}, "Y4")
        .build();
}

// Models for phi = p@a & [b] p@c: an edge where c is unreachable, the same edge extended by a
// c-vertex, a facet where a is dead, and a lone a-vertex.
inline SimplicialModelData nouniform_c() {
    return ComplexBuilder({"a", "b", "c"}).vertex("a1", "a", true).vertex("b1", "b", true).facet({"a1", "b1"}, "X").build();
}

inline SimplicialModelData nouniform_cp() {
    return ComplexBuilder({"a", "b", "c"})
        .vertex("a1", "a", true)
        .vertex("b1", "b", true)
        .vertex("c1", "c", true)
        .facet({"a1", "b1"}, "Xp")
        .facet({"b1", "c1"}, "Yp")
        .build();
}

inline SimplicialModelData nouniform_dead_a() {
    return ComplexBuilder({"a", "b", "c"}).vertex("b1", "b", true).vertex("c1", "c", true).facet({"b1", "c1"}, "X").build();
}

inline SimplicialModelData nouniform_only_a() {
    return ComplexBuilder({"a", "b", "c"}).vertex("a1", "a", true).facet({"a1"}, "X").build();
}

} // namespace detail

/// Three chains hanging from the edge X = {a0, b1}; see faraway_family.
struct FarawayFamily {
    SimplicialModelData c;
    SimplicialModelData cp;
    SimplicialModelData cpp;
};

/// Two branches of m (c, d) edge pairs below b1, each ending in an e-vertex. C has p@e on
/// both ends, C' has it false on the left end, C'' lacks the left e-vertex. In every model
/// the points are aliased X (top edge) and Y (first left edge).
inline FarawayFamily faraway_family(int m) {
    if (m < 1) throw InvalidParam("faraway family needs m >= 1, got " + std::to_string(m));
    auto make = [m](int variant) {
        detail::ComplexBuilder b({"a", "b", "c", "d", "e"});
        b.vertex("a0", "a", false).vertex("b1", "b", true).facet({"a0", "b1"}, "X");
        for (std::string side : {"l", "r"}) {
            VertexId prev = "b1";
            for (int i = 1; i <= m; ++i) {
                VertexId c = "c" + side + std::to_string(i), d = "d" + side + std::to_string(i);
                b.vertex(c, "c", false).vertex(d, "d", false);
                b.facet({prev, c}, (side == "l" && i == 1) ? "Y" : "");
                b.facet({c, d});
                prev = d;
            }
            if (side == "l" && variant == 2) continue;
            VertexId e = "e" + side;
            b.vertex(e, "e", !(side == "l" && variant == 1));
            b.facet({prev, e});
        }
        return b.build();
    };
    return {make(0), make(1), make(2)};
}

inline const std::map<std::string, std::function<Fixture()>>& fixture_registry() {
    static const std::map<std::string, std::function<Fixture()>> reg = [] {
        std::map<std::string, std::function<Fixture()>> r;
        auto add = [&](std::string id, std::string desc, std::function<ModelPayload()> f) {
            r.emplace(id, [id, desc, f] { return Fixture{id, desc, f()}; });
        };
        add("fig1.C", "edge X and triangle Y sharing the a-vertex; c is dead in X", [] { return detail::fig1_c(); });
        add("fig1.Cp", "single triangle Yp with every agent alive", [] { return detail::fig1_cp(); });
        add("fig1.M", "partial epistemic model of fig1.C", [] { return detail::fig1_m(); });
        add("fig1.Mp", "singleton partial epistemic model of fig1.Cp", [] { return detail::fig1_mp(); });
        add("ex.bisim.left", "edge X and triangle Y sharing a0", [] { return detail::bisim_left(); });
        add("ex.bisim.mid", "ex.bisim.left plus an edge Zp with a second 1_b vertex", [] { return detail::bisim_mid(); });
        add("ex.bisim.right", "ex.bisim.left plus a triangle Zpp with a second 1_c vertex",
            [] { return detail::bisim_right(); });
        add("ex.bisim2.M", "partial epistemic model of ex.bisim.left", [] { return detail::bisim2_m(); });
        add("ex.bisim2.Mp", "partial epistemic model of ex.bisim.mid, p@c true at dead Zp",
            [] { return detail::bisim2_mp(); });
        add("ex.bisim2.Mpp", "partial epistemic model of ex.bisim.right, p@c true at dead Xpp",
            [] { return detail::bisim2_mpp(); });
        add("fig4.C", "triangle X with edges Y2, Y3 off c1 and Y4 joining e1 to a0", [] { return detail::fig4_c(); });
        for (int m = 1; m <= 3; ++m) {
            std::string k = std::to_string(m);
            add("faraway.m" + k + ".C", "faraway family, both chain ends 1_e",
                [m] { return faraway_family(m).c; });
            add("faraway.m" + k + ".Cp", "faraway family, left chain end 0_e",
                [m] { return faraway_family(m).cp; });
            add("faraway.m" + k + ".Cpp", "faraway family, left chain end missing",
                [m] { return faraway_family(m).cpp; });
        }
        add("nouniform.C", "edge {a,b}; c unreachable", [] { return detail::nouniform_c(); });
        add("nouniform.Cp", "edge {a,b} extended by a b-adjacent edge {b,c}", [] { return detail::nouniform_cp(); });
        add("nouniform.deadA", "edge {b,c}; a dead", [] { return detail::nouniform_dead_a(); });
        add("nouniform.onlyA", "single a-vertex", [] { return detail::nouniform_only_a(); });
        return r;
    }();
    return reg;
}

inline std::vector<std::string> fixture_ids() {
    std::vector<std::string> out;
    for (const auto& [id, _] : fixture_registry()) out.push_back(id);
    return out;
}

inline Fixture fixture(const std::string& id) {
    const auto& reg = fixture_registry();
    auto it = reg.find(id);
    if (it == reg.end()) throw UnknownFixture(id);
    return it->second();
}

inline SimplicialModel simplicial_fixture(const std::string& id) {
    Fixture f = fixture(id);
    if (!f.is_simplicial()) throw InvalidParam("fixture '" + id + "' is not a simplicial model");
    return SimplicialModel(f.simplicial());
}

inline PartialEpistemicModel kripke_fixture(const std::string& id) {
    Fixture f = fixture(id);
    if (f.is_simplicial()) throw InvalidParam("fixture '" + id + "' is not a partial epistemic model");
    return PartialEpistemicModel(f.kripke());
}

/// Formulas from the worked examples, in surface syntax.
inline const std::map<std::string, std::string>& named_formulas() {
    static const std::map<std::string, std::string> f = {
        {"intro.witness", "<a> !alive(c)"},
        {"fig4.phi", "p@b & <c><d> p@a & <c><e> !p@a"},
        {"fig4.psi", "<d> p@a"},
        {"lifetree.1", "<b> !p@d & <c> p@d"},
        {"lifetree.2", "<a>(<b> !p@d & <c> p@d)"},
        {"lifetree.3", "<a><b> !p@d & <a><c> p@d"},
        {"nouniform.phi", "p@a & [b] p@c"},
    };
    return f;
}

/// `[b]([c][d])^m p@e`
inline Formula faraway_witness(int m) {
    Formula f = atom("p", "e");
    for (int i = 0; i < m; ++i) f = box("c", box("d", f));
    return box("b", f);
}

namespace detail {

/// Platform-independent draws: raw engine output reduced by modulo.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : eng_() % n; }
    bool coin(std::uint64_t num = 1, std::uint64_t den = 2) { return below(den) < num; }

private:
    std::mt19937_64 eng_;
};

inline std::string agent_name(std::size_t i) { return std::string(1, static_cast<char>('a' + i)); }
inline std::string atom_name(std::size_t i) {
    static const char* names[] = {"p", "q", "r", "s", "t", "u"};
    return i < 6 ? names[i] : "p" + std::to_string(i);
}

} // namespace detail

struct RandomModelParams {
    std::size_t max_agents = 3;
    std::size_t max_facets = 4;
    std::size_t max_atoms = 1;
};

/// Valid random simplicial model, deterministic per seed.
///
/// Agents are `a`, `b`, ...; atoms `p`, `q`, .... Facets are drawn over per-agent vertex
/// pools so that adjacency is common; facets contained in others are then discarded.
inline SimplicialModelData random_model(std::uint64_t seed, const RandomModelParams& p) {
    if (p.max_agents < 1 || p.max_facets < 1 || p.max_atoms < 1)
        throw InvalidParam("random model bounds must be at least 1");
    if (p.max_agents > 26) throw InvalidParam("random model supports at most 26 agents");
    detail::Rng rng(seed);
    const std::size_t na = 1 + rng.below(p.max_agents);
    const std::size_t nf = 1 + rng.below(p.max_facets);
    const std::size_t natoms = 1 + rng.below(p.max_atoms);
    const std::size_t pool = 1 + nf / 2;

    SimplicialModelData d;
    for (std::size_t i = 0; i < na; ++i) d.agents.push_back(detail::agent_name(i));
    std::vector<std::vector<VertexId>> vertices_of(na);
    for (std::size_t a = 0; a < na; ++a) {
        for (std::size_t k = 0; k < pool; ++k) {
            VertexId v = d.agents[a] + std::to_string(k);
            VertexData vd{d.agents[a], {}};
            for (std::size_t q = 0; q < natoms; ++q)
                if (rng.coin()) vd.atoms.insert(detail::atom_name(q));
            d.vertices.emplace(v, std::move(vd));
            vertices_of[a].push_back(v);
        }
    }
    std::vector<std::set<VertexId>> facets;
    for (std::size_t f = 0; f < nf; ++f) {
        std::set<VertexId> s;
        // Each agent joins with probability 2/3; at least one agent always does.
        for (std::size_t a = 0; a < na; ++a)
            if (rng.coin(2, 3)) s.insert(vertices_of[a][rng.below(pool)]);
        if (s.empty()) {
            std::size_t a = rng.below(na);
            s.insert(vertices_of[a][rng.below(pool)]);
        }
        facets.push_back(std::move(s));
    }
    std::vector<std::set<VertexId>> kept;
    for (std::size_t i = 0; i < facets.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < facets.size() && !dominated; ++j) {
            if (i == j) continue;
            bool sub = std::includes(facets[j].begin(), facets[j].end(), facets[i].begin(), facets[i].end());
            dominated = sub && (facets[i] != facets[j] || j < i);
        }
        if (!dominated) kept.push_back(facets[i]);
    }
    std::set<VertexId> used;
    for (const auto& f : kept) {
        used.insert(f.begin(), f.end());
        d.facets.emplace_back(f.begin(), f.end());
    }
    for (auto it = d.vertices.begin(); it != d.vertices.end();)
        it = used.count(it->first) ? std::next(it) : d.vertices.erase(it);
    return d;
}

inline SimplicialModelData random_model(std::uint64_t seed, std::size_t max_agents, std::size_t max_facets,
                                        std::size_t max_atoms) {
    return random_model(seed, RandomModelParams{max_agents, max_facets, max_atoms});
}

/// Valid random partial epistemic model: κ of a random simplicial model, plus random atoms
/// of agents that are dead at a state.
inline PartialEpistemicModelData random_kripke(std::uint64_t seed, const RandomModelParams& p) {
    SimplicialModel c(random_model(seed, p));
    PartialEpistemicModelData d = kappa(c).model.data();
    detail::Rng rng(seed ^ 0x5eedULL);
    std::set<std::string> names;
    for (std::uint32_t v = 0; v < c.vertex_count(); ++v)
        for (const auto& n : c.vertex_atoms(v)) names.insert(n);
    if (names.empty()) names.insert("p");
    for (auto& [s, st] : d.states)
        for (const auto& a : d.agents)
            if (!st.alive.count(a))
                for (const auto& n : names)
                    if (rng.coin(1, 3)) st.atoms.insert({n, a});
    return d;
}

inline PartialEpistemicModelData random_kripke(std::uint64_t seed, std::size_t max_agents, std::size_t max_facets,
                                               std::size_t max_atoms) {
    return random_kripke(seed, RandomModelParams{max_agents, max_facets, max_atoms});
}

} // namespace glocal
