#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bisim.hpp"
#include "enumerate.hpp"
#include "errors.hpp"
#include "formula.hpp"
#include "model.hpp"
#include "semantics.hpp"

namespace glocal {

struct StateData {
    std::set<AgentId> alive;
    /// True local atoms. Atoms of dead agents are allowed and ignored by the semantics.
    std::set<LocalAtom> atoms;
};

/// Unvalidated partial epistemic model as it appears in a model file.
struct PartialEpistemicModelData {
    std::vector<AgentId> agents;
    std::map<std::string, StateData> states;
    /// Per agent, a partition of the states where that agent is alive.
    std::map<AgentId, std::vector<std::vector<std::string>>> relations;
};

inline std::vector<Violation> validate_kripke(const PartialEpistemicModelData& d) {
    std::vector<Violation> out;
    std::set<AgentId> agents;
    for (const auto& a : d.agents) {
        if (!detail::is_identifier(a)) out.push_back({ViolationKind::BadIdentifier, "agent '" + a + "'"});
        if (!agents.insert(a).second) out.push_back({ViolationKind::DuplicateAgent, "agent '" + a + "'"});
    }
    if (agents.size() > kMaxAgents)
        out.push_back({ViolationKind::TooManyAgents, std::to_string(agents.size()) + " agents"});
    if (d.states.empty()) out.push_back({ViolationKind::EmptyComplex, "no states"});

    for (const auto& [s, st] : d.states) {
        if (s.empty()) out.push_back({ViolationKind::BadIdentifier, "empty state name"});
        for (const auto& a : st.alive)
            if (!agents.count(a))
                out.push_back({ViolationKind::UnknownAgent, "state '" + s + "' has live agent '" + a + "'"});
        for (const auto& p : st.atoms) {
            if (!agents.count(p.agent))
                out.push_back({ViolationKind::UnknownAgent, "state '" + s + "' has atom " + p.str()});
            if (!detail::is_identifier(p.name))
                out.push_back({ViolationKind::BadIdentifier, "atom '" + p.name + "' at state '" + s + "'"});
        }
        if (st.alive.empty()) out.push_back({ViolationKind::Properness, "state '" + s + "' has no live agent"});
    }

    for (const auto& [a, blocks] : d.relations)
        if (!agents.count(a)) out.push_back({ViolationKind::UnknownAgent, "relation for agent '" + a + "'"});

    // block_of[a][s] = block index
    std::map<AgentId, std::map<std::string, std::size_t>> block_of;
    for (const auto& a : d.agents) {
        auto& bo = block_of[a];
        auto rit = d.relations.find(a);
        if (rit != d.relations.end()) {
            for (std::size_t i = 0; i < rit->second.size(); ++i) {
                const auto& blk = rit->second[i];
                if (blk.empty()) out.push_back({ViolationKind::Partition, "empty " + a + "-block"});
                for (const auto& s : blk) {
                    auto sit = d.states.find(s);
                    if (sit == d.states.end()) {
                        out.push_back({ViolationKind::UnknownState, "'" + s + "' in " + a + "-block"});
                        continue;
                    }
                    if (!sit->second.alive.count(a))
                        out.push_back({ViolationKind::Partition, "state '" + s + "' is in an " + a +
                                                                      "-block but " + a + " is dead there"});
                    if (!bo.emplace(s, i).second)
                        out.push_back({ViolationKind::Partition, "state '" + s + "' is in two " + a + "-blocks"});
                }
            }
        }
        for (const auto& [s, st] : d.states)
            if (st.alive.count(a) && !bo.count(s))
                out.push_back({ViolationKind::Partition, "state '" + s + "' is in no " + a + "-block"});
    }

    for (const auto& [a, bo] : block_of) {
        std::map<std::size_t, std::string> rep;
        for (const auto& [s, i] : bo) {
            auto [it, fresh] = rep.emplace(i, s);
            if (fresh) continue;
            auto own = [&](const std::string& st) {
                std::set<std::string> names;
                for (const auto& p : d.states.at(st).atoms)
                    if (p.agent == a) names.insert(p.name);
                return names;
            };
            if (own(s) != own(it->second))
                out.push_back({ViolationKind::Locality, "states '" + it->second + "' and '" + s +
                                                            "' share an " + a + "-block but differ on " + a + "'s atoms"});
        }
    }

    for (auto i = d.states.begin(); i != d.states.end(); ++i) {
        for (auto j = d.states.begin(); j != d.states.end(); ++j) {
            if (i == j) continue;
            bool separated = false;
            for (const auto& b : i->second.alive) {
                auto& bo = block_of[b];
                auto si = bo.find(i->first), sj = bo.find(j->first);
                if (si == bo.end() || sj == bo.end() || si->second != sj->second) {
                    separated = true;
                    break;
                }
            }
            if (!separated && !i->second.alive.empty())
                out.push_back({ViolationKind::Properness, "no live agent of '" + i->first +
                                                              "' distinguishes it from '" + j->first + "'"});
        }
    }
    return out;
}

/// Validated, immutable partial epistemic model. States are indexed in name order.
class PartialEpistemicModel {
public:
    explicit PartialEpistemicModel(const PartialEpistemicModelData& d) {
        if (auto v = validate_kripke(d); !v.empty()) {
            std::vector<std::string> msgs;
            for (const auto& x : v) msgs.push_back(std::string(to_string(x.kind)) + ": " + x.detail);
            throw InvalidModel("partial epistemic model", std::move(msgs));
        }
        agents_ = d.agents;
        std::sort(agents_.begin(), agents_.end());
        for (std::size_t i = 0; i < agents_.size(); ++i) agent_index_.emplace(agents_[i], static_cast<int>(i));
        std::map<std::string, std::uint32_t> sidx;
        for (const auto& [s, st] : d.states) {
            sidx.emplace(s, static_cast<std::uint32_t>(names_.size()));
            names_.push_back(s);
            states_.push_back(st);
            std::uint64_t mask = 0;
            for (const auto& a : st.alive) mask |= std::uint64_t{1} << agent_index_.at(a);
            masks_.push_back(mask);
        }
        blocks_.assign(agents_.size(), {});
        block_of_.assign(agents_.size(), std::vector<std::int32_t>(names_.size(), -1));
        for (std::size_t a = 0; a < agents_.size(); ++a) {
            auto it = d.relations.find(agents_[a]);
            if (it == d.relations.end()) continue;
            for (const auto& blk : it->second) {
                std::vector<std::uint32_t> b;
                for (const auto& s : blk) b.push_back(sidx.at(s));
                std::sort(b.begin(), b.end());
                for (auto s : b) block_of_[a][s] = static_cast<std::int32_t>(blocks_[a].size());
                blocks_[a].push_back(std::move(b));
            }
            std::sort(blocks_[a].begin(), blocks_[a].end());
            for (std::size_t i = 0; i < blocks_[a].size(); ++i)
                for (auto s : blocks_[a][i]) block_of_[a][s] = static_cast<std::int32_t>(i);
        }
    }

    const std::vector<AgentId>& agents() const noexcept { return agents_; }
    std::size_t state_count() const noexcept { return names_.size(); }
    const std::string& state_name(StateId s) const { return names_.at(s.value); }
    const StateData& state(StateId s) const { return states_.at(s.value); }

    StateId state_id(std::string_view name) const {
        auto it = std::lower_bound(names_.begin(), names_.end(), name);
        if (it == names_.end() || *it != name) throw UnknownState(std::string(name));
        return {static_cast<std::uint32_t>(it - names_.begin())};
    }

    std::optional<int> agent_index(std::string_view a) const {
        auto it = agent_index_.find(std::string(a));
        if (it == agent_index_.end()) return std::nullopt;
        return it->second;
    }

    /// The a-equivalence class of s; empty when a is dead at s.
    std::vector<StateId> block(std::string_view a, StateId s) const {
        std::vector<StateId> out;
        if (auto ai = agent_index(a))
            for (auto t : neighbours(*ai, s.value)) out.push_back({t});
        return out;
    }

    const std::vector<std::vector<std::uint32_t>>& blocks(int a) const { return blocks_.at(static_cast<std::size_t>(a)); }

    // Structure interface.

    std::size_t point_count() const noexcept { return names_.size(); }
    bool alive(std::size_t s, int a) const { return (masks_[s] >> a) & 1U; }
    bool local_truth(std::size_t s, int a, const std::string& name) const {
        return states_[s].atoms.count(LocalAtom{name, agents_[static_cast<std::size_t>(a)]}) != 0;
    }
    std::span<const std::uint32_t> neighbours(int a, std::size_t s) const {
        auto b = block_of_[static_cast<std::size_t>(a)][s];
        if (b < 0) return {};
        return blocks_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    }
    std::string point_label(std::size_t s) const { return names_.at(s); }

    /// Local atoms of agent `a` true at s.
    std::set<std::string> own_atoms(std::size_t s, const AgentId& a) const {
        std::set<std::string> out;
        for (const auto& p : states_[s].atoms)
            if (p.agent == a) out.insert(p.name);
        return out;
    }

    PartialEpistemicModelData data() const {
        PartialEpistemicModelData d;
        d.agents = agents_;
        for (std::size_t i = 0; i < names_.size(); ++i) d.states.emplace(names_[i], states_[i]);
        for (std::size_t a = 0; a < agents_.size(); ++a) {
            auto& rel = d.relations[agents_[a]];
            for (const auto& b : blocks_[a]) {
                std::vector<std::string> blk;
                for (auto s : b) blk.push_back(names_[s]);
                rel.push_back(std::move(blk));
            }
        }
        return d;
    }

private:
    std::vector<AgentId> agents_;
    std::map<AgentId, int> agent_index_;
    std::vector<std::string> names_;
    std::vector<StateData> states_;
    std::vector<std::uint64_t> masks_;
    std::vector<std::vector<std::vector<std::uint32_t>>> blocks_;
    std::vector<std::vector<std::int32_t>> block_of_;
};

inline std::vector<Violation> validate_kripke(const PartialEpistemicModel& m) { return validate_kripke(m.data()); }

inline void check_state(const PartialEpistemicModel& m, StateId s) {
    if (s.value >= m.state_count()) throw UnknownState("state index " + std::to_string(s.value));
}

inline TruthValue eval_kripke(const PartialEpistemicModel& m, StateId s, const Formula& f) {
    check_state(m, s);
    BasicEvaluator<PartialEpistemicModel> ev(m);
    return ev.at(s.value, f);
}

/// Simplicial model of a partial epistemic model, with the facet of every state.
struct SigmaResult {
    SimplicialModel model;
    std::vector<FacetId> facet_of_state;
};

/// One vertex per (equivalence class, agent), named `agent.s` after the class's least state.
/// Every state becomes a facet aliased by the state name. Atoms of dead agents are dropped.
inline SigmaResult sigma(const PartialEpistemicModel& m) {
    SimplicialModelData d;
    d.agents = m.agents();
    std::vector<std::vector<VertexId>> facet(m.state_count());
    for (std::size_t a = 0; a < m.agents().size(); ++a) {
        const AgentId& ag = m.agents()[a];
        for (const auto& blk : m.blocks(static_cast<int>(a))) {
            VertexId v = ag + "." + m.state_name({blk.front()});
            d.vertices.emplace(v, VertexData{ag, m.own_atoms(blk.front(), ag)});
            for (auto s : blk) facet[s].push_back(v);
        }
    }
    for (std::uint32_t s = 0; s < m.state_count(); ++s) {
        d.facets.push_back(facet[s]);
        d.names.emplace(m.state_name({s}), facet[s]);
    }
    SimplicialModel out(d);
    std::vector<FacetId> map;
    for (std::uint32_t s = 0; s < m.state_count(); ++s) map.push_back(out.point(m.state_name({s})));
    return {std::move(out), std::move(map)};
}

/// Partial epistemic model of a simplicial model, with the state of every facet.
struct KappaResult {
    PartialEpistemicModel model;
    std::vector<StateId> state_of_facet;
};

/// States are facets, named by alias when every facet has a distinct one, else `f<index>`.
inline KappaResult kappa(const SimplicialModel& c) {
    std::vector<std::string> names;
    std::set<std::string> seen;
    bool aliases_ok = true;
    for (auto f : c.facets()) {
        std::string label = c.facet_label(f);
        bool has_alias = c.aliases().count(label) && c.aliases().at(label) == f;
        if (!has_alias || !seen.insert(label).second) aliases_ok = false;
        names.push_back(label);
    }
    if (!aliases_ok)
        for (std::size_t i = 0; i < names.size(); ++i) names[i] = "f" + std::to_string(i);

    PartialEpistemicModelData d;
    d.agents = c.agents();
    for (auto f : c.facets()) d.states.emplace(names[f.value], StateData{c.chi(f), c.ell(f)});
    for (std::size_t a = 0; a < c.agents().size(); ++a) {
        auto& rel = d.relations[c.agents()[a]];
        std::set<std::vector<std::uint32_t>> classes;
        for (auto f : c.facets())
            if (c.alive(f.value, static_cast<int>(a))) {
                auto n = c.neighbours(static_cast<int>(a), f.value);
                classes.emplace(n.begin(), n.end());
            }
        for (const auto& cls : classes) {
            std::vector<std::string> blk;
            for (auto f : cls) blk.push_back(names[f]);
            rel.push_back(std::move(blk));
        }
    }
    PartialEpistemicModel out(d);
    std::vector<StateId> map;
    for (const auto& n : names) map.push_back(out.state_id(n));
    return {std::move(out), std::move(map)};
}

/// Atoms clause of life bisimulation: same live agents, same atoms of every live agent.
inline bool life_atoms(const PartialEpistemicModel& m, StateId s, const PartialEpistemicModel& m2, StateId s2) {
    const auto& a1 = m.state(s).alive;
    if (a1 != m2.state(s2).alive) return false;
    for (const auto& a : a1)
        if (m.own_atoms(s.value, a) != m2.own_atoms(s2.value, a)) return false;
    return true;
}

/// Atoms clause of standard bisimulation: same live agents and same local atoms, dead agents included.
inline bool standard_atoms(const PartialEpistemicModel& m, StateId s, const PartialEpistemicModel& m2, StateId s2) {
    return m.state(s).alive == m2.state(s2).alive && m.state(s).atoms == m2.state(s2).atoms;
}

// Dead agents have empty classes, so quantifying Forth/Back over all agents or over the
// live ones gives the same clause; the two notions differ only in Atoms.

inline BisimRelation life_bisim(const PartialEpistemicModel& m, const PartialEpistemicModel& m2) {
    return greatest_bisimulation(m, m2, [&](std::size_t l, std::size_t r) {
        return life_atoms(m, {static_cast<std::uint32_t>(l)}, m2, {static_cast<std::uint32_t>(r)});
    });
}

inline BisimRelation standard_bisim(const PartialEpistemicModel& m, const PartialEpistemicModel& m2) {
    return greatest_bisimulation(m, m2, [&](std::size_t l, std::size_t r) {
        return standard_atoms(m, {static_cast<std::uint32_t>(l)}, m2, {static_cast<std::uint32_t>(r)});
    });
}

inline bool life_bisimilar(const PartialEpistemicModel& m, StateId s, const PartialEpistemicModel& m2, StateId s2) {
    check_state(m, s);
    check_state(m2, s2);
    return life_bisim(m, m2).contains(s.value, s2.value);
}

inline bool standard_bisimilar(const PartialEpistemicModel& m, StateId s, const PartialEpistemicModel& m2,
                               StateId s2) {
    check_state(m, s);
    check_state(m2, s2);
    return standard_bisim(m, m2).contains(s.value, s2.value);
}

inline Vocabulary vocabulary_of(const PartialEpistemicModel& m) {
    std::set<std::string> names;
    for (std::uint32_t s = 0; s < m.state_count(); ++s)
        for (const auto& p : m.state({s}).atoms) names.insert(p.name);
    return Vocabulary::uniform(m.agents(), {names.begin(), names.end()});
}

struct CorrespondenceBounds {
    int depth = 2;
    std::size_t size = 5;
    std::size_t budget = kDefaultFormulaBudget;
};

struct CorrespondenceReport {
    std::size_t points = 0;
    std::size_t formulas = 0;
    std::size_t comparisons = 0;
    /// Human-readable mismatches; empty means every check passed.
    std::vector<std::string> failures;
    bool round_trip_bisimilar = true;

    bool ok() const noexcept { return failures.empty() && round_trip_bisimilar; }
};

namespace detail {

template <EpistemicStructure A, EpistemicStructure B, class PointMap>
void compare_truth(const A& a, const B& b, PointMap&& map, const Vocabulary& vocab, const CorrespondenceBounds& bounds,
                   CorrespondenceReport& rep) {
    BasicEvaluator<A> ea(a);
    BasicEvaluator<B> eb(b);
    rep.points = a.point_count();
    FormulaEnumerator en(vocab, bounds.depth, bounds.size, Fragment::Lplus, bounds.budget);
    en.for_each([&](const Formula& f) {
        ++rep.formulas;
        auto va = ea.values(f);
        auto vb = eb.values(f);
        for (std::size_t p = 0; p < a.point_count(); ++p) {
            ++rep.comparisons;
            if (va[p] != vb[map(p)] && rep.failures.size() < 20)
                rep.failures.push_back(a.point_label(p) + ": " + print(f) + " is " + std::string(to_string(va[p])) +
                                       " but " + std::string(to_string(vb[map(p)])) + " after translation");
        }
        return true;
    });
}

} // namespace detail

/// Truth preservation under κ and bisimilarity of C with σ(κ(C)).
inline CorrespondenceReport correspondence_check(const SimplicialModel& c, const CorrespondenceBounds& bounds = {}) {
    CorrespondenceReport rep;
    KappaResult k = kappa(c);
    detail::compare_truth(
        c, k.model, [&](std::size_t p) { return k.state_of_facet[p].value; }, vocabulary_of(c), bounds, rep);
    SigmaResult back = sigma(k.model);
    BisimRelation rel = max_bisim(c, back.model);
    for (auto f : c.facets())
        if (!rel.contains(f, back.facet_of_state[k.state_of_facet[f.value].value])) rep.round_trip_bisimilar = false;
    return rep;
}

/// Truth preservation under σ and life bisimilarity of M with κ(σ(M)).
inline CorrespondenceReport correspondence_check(const PartialEpistemicModel& m,
                                                 const CorrespondenceBounds& bounds = {}) {
    CorrespondenceReport rep;
    SigmaResult s = sigma(m);
    detail::compare_truth(
        m, s.model, [&](std::size_t p) { return s.facet_of_state[p].value; }, vocabulary_of(m), bounds, rep);
    KappaResult back = kappa(s.model);
    BisimRelation rel = life_bisim(m, back.model);
    for (std::uint32_t st = 0; st < m.state_count(); ++st)
        if (!rel.contains(st, back.state_of_facet[s.facet_of_state[st].value].value)) rep.round_trip_bisimilar = false;
    return rep;
}

} // namespace glocal
