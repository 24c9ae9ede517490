#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "formula.hpp"
#include "truth_value.hpp"

namespace glocal {

using VertexId = std::string;

/// Index of a facet in a SimplicialModel. Facets are stored in canonical (sorted) order.
struct FacetId {
    std::uint32_t value = 0;

    friend auto operator<=>(const FacetId&, const FacetId&) = default;
    friend bool operator==(const FacetId&, const FacetId&) = default;
};

/// Index of a state in a PartialEpistemicModel.
struct StateId {
    std::uint32_t value = 0;

    friend auto operator<=>(const StateId&, const StateId&) = default;
    friend bool operator==(const StateId&, const StateId&) = default;
};

struct VertexData {
    AgentId agent;
    /// Names of the local atoms of `agent` that hold at this vertex.
    std::set<std::string> atoms;
};

/// Unvalidated simplicial model as it appears in a model file.
struct SimplicialModelData {
    std::vector<AgentId> agents;
    std::map<VertexId, VertexData> vertices;
    std::vector<std::vector<VertexId>> facets;
    /// Optional facet aliases ("X" -> vertex list).
    std::map<std::string, std::vector<VertexId>> names;
};

enum class ViolationKind {
    EmptyComplex,
    BadIdentifier,
    DuplicateAgent,
    TooManyAgents,
    UnknownAgent,
    EmptyFacet,
    UnknownVertex,
    DuplicateVertex,
    Chromatic,
    Maximality,
    OrphanVertex,
    BadAlias,
    // Kripke-side kinds
    UnknownState,
    Partition,
    Locality,
    Properness,
};

inline std::string_view to_string(ViolationKind k) {
    switch (k) {
    case ViolationKind::EmptyComplex: return "empty-complex";
    case ViolationKind::BadIdentifier: return "bad-identifier";
    case ViolationKind::DuplicateAgent: return "duplicate-agent";
    case ViolationKind::TooManyAgents: return "too-many-agents";
    case ViolationKind::UnknownAgent: return "unknown-agent";
    case ViolationKind::EmptyFacet: return "empty-facet";
    case ViolationKind::UnknownVertex: return "unknown-vertex";
    case ViolationKind::DuplicateVertex: return "duplicate-vertex";
    case ViolationKind::Chromatic: return "chromatic";
    case ViolationKind::Maximality: return "maximality";
    case ViolationKind::OrphanVertex: return "orphan-vertex";
    case ViolationKind::BadAlias: return "bad-alias";
    case ViolationKind::UnknownState: return "unknown-state";
    case ViolationKind::Partition: return "partition";
    case ViolationKind::Locality: return "locality";
    case ViolationKind::Properness: return "properness";
    }
    return "?";
}

struct Violation {
    ViolationKind kind;
    std::string detail;
};

inline constexpr std::size_t kMaxAgents = 64;

namespace detail {

inline bool is_identifier(std::string_view s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front()))) return false;
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

inline std::string join(const std::vector<std::string>& xs, std::string_view sep = ",") {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += sep;
        out += xs[i];
    }
    return out;
}

inline std::string brace(const std::vector<std::string>& xs) { return "{" + join(xs) + "}"; }

} // namespace detail

/// Every violated invariant of the raw model; empty means valid.
inline std::vector<Violation> validate(const SimplicialModelData& d) {
    std::vector<Violation> out;
    std::set<AgentId> agents;
    for (const auto& a : d.agents) {
        if (!detail::is_identifier(a)) out.push_back({ViolationKind::BadIdentifier, "agent '" + a + "'"});
        if (!agents.insert(a).second) out.push_back({ViolationKind::DuplicateAgent, "agent '" + a + "'"});
    }
    if (agents.size() > kMaxAgents)
        out.push_back({ViolationKind::TooManyAgents, std::to_string(agents.size()) + " agents"});

    for (const auto& [name, v] : d.vertices) {
        if (name.empty()) out.push_back({ViolationKind::BadIdentifier, "empty vertex name"});
        if (!agents.count(v.agent))
            out.push_back({ViolationKind::UnknownAgent, "vertex '" + name + "' has agent '" + v.agent + "'"});
        for (const auto& p : v.atoms)
            if (!detail::is_identifier(p))
                out.push_back({ViolationKind::BadIdentifier, "atom '" + p + "' at vertex '" + name + "'"});
    }

    if (d.facets.empty()) out.push_back({ViolationKind::EmptyComplex, "no facets"});

    std::vector<std::set<VertexId>> sets;
    std::set<VertexId> used;
    for (const auto& f : d.facets) {
        std::string label = detail::brace(f);
        if (f.empty()) out.push_back({ViolationKind::EmptyFacet, "facet " + label});
        std::set<VertexId> s;
        std::map<AgentId, VertexId> colour;
        for (const auto& v : f) {
            if (!s.insert(v).second) out.push_back({ViolationKind::DuplicateVertex, v + " in facet " + label});
            auto it = d.vertices.find(v);
            if (it == d.vertices.end()) {
                out.push_back({ViolationKind::UnknownVertex, v + " in facet " + label});
                continue;
            }
            used.insert(v);
            auto [pos, fresh] = colour.emplace(it->second.agent, v);
            if (!fresh)
                out.push_back({ViolationKind::Chromatic, "facet " + label + " has two " + it->second.agent +
                                                             "-vertices " + pos->second + " and " + v});
        }
        sets.push_back(std::move(s));
    }
    for (std::size_t i = 0; i < sets.size(); ++i) {
        for (std::size_t j = 0; j < sets.size(); ++j) {
            if (i == j || sets[i].empty()) continue;
            bool subset = std::includes(sets[j].begin(), sets[j].end(), sets[i].begin(), sets[i].end());
            // Equal facets are reported once, from the later copy.
            if (subset && (sets[i] != sets[j] || i > j))
                out.push_back({ViolationKind::Maximality,
                               "facet " + detail::brace(d.facets[i]) + " is contained in " + detail::brace(d.facets[j])});
        }
    }
    for (const auto& [name, v] : d.vertices)
        if (!used.count(name)) out.push_back({ViolationKind::OrphanVertex, "vertex '" + name + "' is in no facet"});

    for (const auto& [alias, vs] : d.names) {
        std::set<VertexId> s(vs.begin(), vs.end());
        if (std::find(sets.begin(), sets.end(), s) == sets.end())
            out.push_back({ViolationKind::BadAlias, "alias '" + alias + "' does not name a facet"});
    }
    return out;
}

/// Validated, immutable simplicial model stored by its facets.
///
/// Vertices are kept in name order and facets in lexicographic order of their sorted
/// vertex lists, so indices are canonical for a given model.
class SimplicialModel {
public:
    explicit SimplicialModel(const SimplicialModelData& d) {
        if (auto v = validate(d); !v.empty()) {
            std::vector<std::string> msgs;
            for (const auto& x : v) msgs.push_back(std::string(to_string(x.kind)) + ": " + x.detail);
            throw InvalidModel("simplicial model", std::move(msgs));
        }
        agents_ = d.agents;
        std::sort(agents_.begin(), agents_.end());
        for (std::size_t i = 0; i < agents_.size(); ++i) agent_index_.emplace(agents_[i], static_cast<int>(i));

        std::map<VertexId, std::uint32_t> vidx;
        for (const auto& [name, v] : d.vertices) {
            vidx.emplace(name, static_cast<std::uint32_t>(vertex_names_.size()));
            vertex_names_.push_back(name);
            vertex_agent_.push_back(agent_index_.at(v.agent));
            vertex_atoms_.emplace_back(v.atoms.begin(), v.atoms.end());
        }

        auto to_indices = [&](const std::vector<VertexId>& f) {
            std::vector<std::uint32_t> out;
            for (const auto& v : f) out.push_back(vidx.at(v));
            std::sort(out.begin(), out.end());
            return out;
        };
        for (const auto& f : d.facets) facets_.push_back(to_indices(f));
        std::sort(facets_.begin(), facets_.end(), [&](const auto& l, const auto& r) {
            return std::lexicographical_compare(l.begin(), l.end(), r.begin(), r.end(), [&](auto x, auto y) {
                return vertex_names_[x] < vertex_names_[y];
            });
        });

        const std::size_t na = agents_.size();
        std::vector<std::vector<std::uint32_t>> incident(vertex_names_.size());
        facet_mask_.assign(facets_.size(), 0);
        facet_vertex_.assign(facets_.size(), std::vector<std::int32_t>(na, -1));
        for (std::uint32_t f = 0; f < facets_.size(); ++f) {
            for (auto v : facets_[f]) {
                int a = vertex_agent_[v];
                facet_mask_[f] |= (std::uint64_t{1} << a);
                facet_vertex_[f][a] = static_cast<std::int32_t>(v);
                incident[v].push_back(f);
            }
        }
        star_.assign(na, std::vector<std::vector<std::uint32_t>>(facets_.size()));
        for (std::uint32_t f = 0; f < facets_.size(); ++f)
            for (std::size_t a = 0; a < na; ++a)
                if (auto v = facet_vertex_[f][a]; v >= 0) star_[a][f] = incident[v];

        facet_alias_.assign(facets_.size(), "");
        for (const auto& [alias, vs] : d.names) {
            FacetId id = find_facet(vs);
            aliases_.emplace(alias, id);
            if (facet_alias_[id.value].empty()) facet_alias_[id.value] = alias;
        }
    }

    const std::vector<AgentId>& agents() const noexcept { return agents_; }
    std::size_t vertex_count() const noexcept { return vertex_names_.size(); }
    std::size_t facet_count() const noexcept { return facets_.size(); }

    std::vector<FacetId> facets() const {
        std::vector<FacetId> out;
        for (std::uint32_t i = 0; i < facets_.size(); ++i) out.push_back({i});
        return out;
    }

    std::optional<int> agent_index(std::string_view a) const {
        auto it = agent_index_.find(std::string(a));
        if (it == agent_index_.end()) return std::nullopt;
        return it->second;
    }

    const VertexId& vertex_name(std::uint32_t v) const { return vertex_names_.at(v); }
    const AgentId& vertex_agent(std::uint32_t v) const { return agents_[vertex_agent_.at(v)]; }
    const std::vector<std::string>& vertex_atoms(std::uint32_t v) const { return vertex_atoms_.at(v); }

    std::span<const std::uint32_t> facet_vertices(FacetId f) const { return facets_.at(f.value); }

    std::vector<VertexId> facet_vertex_names(FacetId f) const {
        std::vector<VertexId> out;
        for (auto v : facet_vertices(f)) out.push_back(vertex_names_[v]);
        return out;
    }

    /// Alias if one was declared, otherwise the brace-enclosed vertex list.
    std::string facet_label(FacetId f) const {
        const auto& a = facet_alias_.at(f.value);
        return a.empty() ? detail::brace(facet_vertex_names(f)) : a;
    }

    const std::map<std::string, FacetId>& aliases() const noexcept { return aliases_; }

    /// Facet with exactly these vertices.
    FacetId find_facet(const std::vector<VertexId>& vs) const {
        std::vector<std::uint32_t> want;
        for (const auto& v : vs) want.push_back(vertex_index(v));
        std::sort(want.begin(), want.end());
        want.erase(std::unique(want.begin(), want.end()), want.end());
        for (std::uint32_t i = 0; i < facets_.size(); ++i)
            if (facets_[i] == want) return {i};
        throw PointNotFacet(detail::brace(vs));
    }

    /// Resolves an alias or a comma-separated vertex list.
    FacetId point(std::string_view ref) const {
        if (auto it = aliases_.find(std::string(ref)); it != aliases_.end()) return it->second;
        std::vector<VertexId> vs;
        std::string cur;
        for (char c : ref) {
            if (c == ',') {
                vs.push_back(cur);
                cur.clear();
            } else if (c != ' ' && c != '{' && c != '}') {
                cur += c;
            }
        }
        if (!cur.empty()) vs.push_back(cur);
        if (vs.size() == 1 && !vertex_lookup(vs.front()) )
            throw PointNotFacet("'" + std::string(ref) + "' is neither an alias nor a vertex list");
        return find_facet(vs);
    }

    std::uint32_t vertex_index(const VertexId& v) const {
        if (auto i = vertex_lookup(v)) return *i;
        throw UnknownVertex(v);
    }

    /// Agents alive in the facet.
    std::set<AgentId> chi(FacetId f) const {
        std::set<AgentId> out;
        for (auto v : facet_vertices(f)) out.insert(agents_[vertex_agent_[v]]);
        return out;
    }

    /// Agents of an arbitrary face given by vertex names.
    std::set<AgentId> chi(const std::vector<VertexId>& face) const {
        std::set<AgentId> out;
        for (const auto& v : face) out.insert(agents_[vertex_agent_[vertex_index(v)]]);
        return out;
    }

    std::set<LocalAtom> ell(FacetId f) const {
        std::set<LocalAtom> out;
        for (auto v : facet_vertices(f))
            for (const auto& p : vertex_atoms_[v]) out.insert({p, agents_[vertex_agent_[v]]});
        return out;
    }

    std::set<LocalAtom> ell(const std::vector<VertexId>& face) const {
        std::set<LocalAtom> out;
        for (const auto& name : face) {
            auto v = vertex_index(name);
            for (const auto& p : vertex_atoms_[v]) out.insert({p, agents_[vertex_agent_[v]]});
        }
        return out;
    }

    /// Facets sharing the a-coloured vertex of `f`, in canonical order; empty when a is dead in f.
    std::vector<FacetId> star(std::string_view a, FacetId f) const {
        std::vector<FacetId> out;
        if (auto ai = agent_index(a))
            for (auto g : star_[*ai].at(f.value)) out.push_back({g});
        return out;
    }

    int dimension() const {
        std::size_t m = 0;
        for (const auto& f : facets_) m = std::max(m, f.size());
        return static_cast<int>(m) - 1;
    }

    bool is_pure() const {
        return std::all_of(facets_.begin(), facets_.end(), [&](const auto& f) { return f.size() == agents_.size(); });
    }

    // Structure interface used by the generic evaluator and bisimulation engine.

    std::size_t point_count() const noexcept { return facets_.size(); }
    std::uint64_t alive_mask(std::size_t f) const { return facet_mask_[f]; }
    bool alive(std::size_t f, int a) const { return (facet_mask_[f] >> a) & 1U; }
    bool local_truth(std::size_t f, int a, const std::string& name) const {
        auto v = facet_vertex_[f][a];
        const auto& at = vertex_atoms_[v];
        return std::binary_search(at.begin(), at.end(), name);
    }
    std::span<const std::uint32_t> neighbours(int a, std::size_t f) const { return star_[a][f]; }
    std::string point_label(std::size_t f) const { return facet_label({static_cast<std::uint32_t>(f)}); }

    /// Round-trips to the raw representation (canonical facet order).
    SimplicialModelData data() const {
        SimplicialModelData d;
        d.agents = agents_;
        for (std::uint32_t v = 0; v < vertex_names_.size(); ++v) {
            VertexData vd{agents_[vertex_agent_[v]], {vertex_atoms_[v].begin(), vertex_atoms_[v].end()}};
            d.vertices.emplace(vertex_names_[v], std::move(vd));
        }
        for (auto f : facets()) d.facets.push_back(facet_vertex_names(f));
        for (const auto& [alias, f] : aliases_) d.names.emplace(alias, facet_vertex_names(f));
        return d;
    }

private:
    std::optional<std::uint32_t> vertex_lookup(const VertexId& v) const {
        auto it = std::lower_bound(vertex_names_.begin(), vertex_names_.end(), v);
        if (it == vertex_names_.end() || *it != v) return std::nullopt;
        return static_cast<std::uint32_t>(it - vertex_names_.begin());
    }

    std::vector<AgentId> agents_;
    std::map<AgentId, int> agent_index_;
    std::vector<VertexId> vertex_names_;
    std::vector<int> vertex_agent_;
    std::vector<std::vector<std::string>> vertex_atoms_;
    std::vector<std::vector<std::uint32_t>> facets_;
    std::vector<std::uint64_t> facet_mask_;
    std::vector<std::vector<std::int32_t>> facet_vertex_;
    // star_[agent][facet] -> facets containing the agent's vertex of that facet
    std::vector<std::vector<std::vector<std::uint32_t>>> star_;
    std::map<std::string, FacetId> aliases_;
    std::vector<std::string> facet_alias_;
};

inline std::vector<Violation> validate(const SimplicialModel& m) { return validate(m.data()); }

} // namespace glocal
