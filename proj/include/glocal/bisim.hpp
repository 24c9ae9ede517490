#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "formula.hpp"
#include "lifetree.hpp"
#include "model.hpp"
#include "semantics.hpp"

namespace glocal {

enum class RemovalKind : std::uint8_t { Atoms, Forth, Back };

inline std::string_view to_string(RemovalKind k) {
    switch (k) {
    case RemovalKind::Atoms: return "atoms";
    case RemovalKind::Forth: return "forth";
    case RemovalKind::Back: return "back";
    }
    return "?";
}

/// Why a pair was deleted during refinement.
///
/// For Forth, `witness` is the left-side neighbour with no related match; for Back, the
/// right-side one. Atom mismatches are round 0.
struct RemovalCause {
    RemovalKind kind = RemovalKind::Atoms;
    AgentId agent;
    std::uint32_t witness = 0;
    int round = 0;
};

/// Relation between the points of two structures, with deletion metadata for every excluded pair.
class BisimRelation {
public:
    BisimRelation() = default;
    BisimRelation(std::size_t left, std::size_t right)
        : left_(left), right_(right), in_(left * right, 0), causes_(left * right) {}

    std::size_t left_size() const noexcept { return left_; }
    std::size_t right_size() const noexcept { return right_; }

    bool contains(std::size_t l, std::size_t r) const { return in_.at(l * right_ + r) != 0; }
    bool contains(FacetId l, FacetId r) const { return contains(l.value, r.value); }

    const std::optional<RemovalCause>& cause(std::size_t l, std::size_t r) const { return causes_.at(l * right_ + r); }

    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs() const {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
        for (std::uint32_t l = 0; l < left_; ++l)
            for (std::uint32_t r = 0; r < right_; ++r)
                if (contains(l, r)) out.emplace_back(l, r);
        return out;
    }

    bool empty() const { return std::find(in_.begin(), in_.end(), 1) == in_.end(); }
    std::size_t size() const { return static_cast<std::size_t>(std::count(in_.begin(), in_.end(), 1)); }
    int rounds() const noexcept { return rounds_; }

    /// Every left point is related to something and every right point is related to something.
    bool total() const {
        for (std::size_t l = 0; l < left_; ++l) {
            bool any = false;
            for (std::size_t r = 0; r < right_ && !any; ++r) any = contains(l, r);
            if (!any) return false;
        }
        for (std::size_t r = 0; r < right_; ++r) {
            bool any = false;
            for (std::size_t l = 0; l < left_ && !any; ++l) any = contains(l, r);
            if (!any) return false;
        }
        return true;
    }

    void set(std::size_t l, std::size_t r, bool v) { in_.at(l * right_ + r) = v ? 1 : 0; }
    void remove(std::size_t l, std::size_t r, RemovalCause c) {
        set(l, r, false);
        causes_.at(l * right_ + r) = std::move(c);
    }
    void set_rounds(int n) noexcept { rounds_ = n; }

private:
    std::size_t left_ = 0;
    std::size_t right_ = 0;
    std::vector<std::uint8_t> in_;
    std::vector<std::optional<RemovalCause>> causes_;
    int rounds_ = 0;
};

namespace detail {

/// Agent names of both structures, sorted, with their per-side indices.
struct AgentMap {
    std::vector<AgentId> names;
    std::vector<std::optional<int>> left;
    std::vector<std::optional<int>> right;
};

template <EpistemicStructure L, EpistemicStructure R>
AgentMap agent_map(const L& l, const R& r) {
    std::set<AgentId> all(l.agents().begin(), l.agents().end());
    all.insert(r.agents().begin(), r.agents().end());
    AgentMap m;
    for (const auto& a : all) {
        m.names.push_back(a);
        m.left.push_back(l.agent_index(a));
        m.right.push_back(r.agent_index(a));
    }
    return m;
}

template <EpistemicStructure S>
std::span<const std::uint32_t> nbrs(const S& s, const std::optional<int>& a, std::size_t p) {
    if (!a) return {};
    return s.neighbours(*a, p);
}

/// First Forth or Back failure of pair (l, r) against `rel`, checking agents in name order, Forth before Back.
template <EpistemicStructure L, EpistemicStructure R>
std::optional<RemovalCause> zigzag_failure(const L& left, const R& right, const AgentMap& am, const BisimRelation& rel,
                                           std::size_t l, std::size_t r) {
    for (std::size_t i = 0; i < am.names.size(); ++i) {
        auto rn = nbrs(right, am.right[i], r);
        for (auto y : nbrs(left, am.left[i], l)) {
            bool matched = std::any_of(rn.begin(), rn.end(), [&](auto y2) { return rel.contains(y, y2); });
            if (!matched) return RemovalCause{RemovalKind::Forth, am.names[i], y, 0};
        }
    }
    for (std::size_t i = 0; i < am.names.size(); ++i) {
        auto ln = nbrs(left, am.left[i], l);
        for (auto y2 : nbrs(right, am.right[i], r)) {
            bool matched = std::any_of(ln.begin(), ln.end(), [&](auto y) { return rel.contains(y, y2); });
            if (!matched) return RemovalCause{RemovalKind::Back, am.names[i], y2, 0};
        }
    }
    return std::nullopt;
}

} // namespace detail

/// Greatest-fixpoint bisimulation between two structures.
///
/// `atoms_ok(l, r)` decides the Atoms clause. Each round tests Forth/Back of every surviving
/// pair against the previous round's relation and deletes the failures together.
template <EpistemicStructure L, EpistemicStructure R, class AtomsFn>
BisimRelation greatest_bisimulation(const L& left, const R& right, AtomsFn&& atoms_ok) {
    const auto am = detail::agent_map(left, right);
    BisimRelation rel(left.point_count(), right.point_count());
    for (std::size_t l = 0; l < left.point_count(); ++l)
        for (std::size_t r = 0; r < right.point_count(); ++r) {
            if (atoms_ok(l, r))
                rel.set(l, r, true);
            else
                rel.remove(l, r, RemovalCause{RemovalKind::Atoms, {}, 0, 0});
        }
    int round = 0;
    while (true) {
        ++round;
        const BisimRelation snapshot = rel;
        bool changed = false;
        for (auto [l, r] : snapshot.pairs()) {
            if (auto c = detail::zigzag_failure(left, right, am, snapshot, l, r)) {
                c->round = round;
                rel.remove(l, r, *c);
                changed = true;
            }
        }
        if (!changed) break;
    }
    rel.set_rounds(round - 1);
    return rel;
}

/// Atoms clause on simplicial models: same live agents and same true local atoms.
inline bool same_atoms(const SimplicialModel& m, FacetId x, const SimplicialModel& m2, FacetId x2) {
    return m.chi(x) == m2.chi(x2) && m.ell(x) == m2.ell(x2);
}

inline BisimRelation max_bisim(const SimplicialModel& m, const SimplicialModel& m2) {
    return greatest_bisimulation(m, m2, [&](std::size_t l, std::size_t r) {
        return same_atoms(m, {static_cast<std::uint32_t>(l)}, m2, {static_cast<std::uint32_t>(r)});
    });
}

inline bool bisimilar(const SimplicialModel& m, FacetId x, const SimplicialModel& m2, FacetId x2) {
    check_point(m, x);
    check_point(m2, x2);
    return max_bisim(m, m2).contains(x, x2);
}

enum class BisimClause : std::uint8_t { Nonempty, Atoms, Forth, Back };

inline std::string_view to_string(BisimClause c) {
    switch (c) {
    case BisimClause::Nonempty: return "nonempty";
    case BisimClause::Atoms: return "atoms";
    case BisimClause::Forth: return "forth";
    case BisimClause::Back: return "back";
    }
    return "?";
}

struct BisimViolation {
    BisimClause clause = BisimClause::Nonempty;
    FacetId left;
    FacetId right;
    AgentId agent;
    /// Unmatched neighbour: on the left for Forth, on the right for Back.
    FacetId witness;
};

/// Checks a candidate relation. Pairs are examined in sorted order; per pair Atoms, then Forth, then Back.
inline std::optional<BisimViolation> is_bisimulation(const SimplicialModel& m, const SimplicialModel& m2,
                                                     const std::set<std::pair<FacetId, FacetId>>& pairs) {
    if (pairs.empty()) return BisimViolation{};
    BisimRelation rel(m.facet_count(), m2.facet_count());
    for (auto [l, r] : pairs) {
        check_point(m, l);
        check_point(m2, r);
        rel.set(l.value, r.value, true);
    }
    const auto am = detail::agent_map(m, m2);
    for (auto [l, r] : pairs) {
        if (!same_atoms(m, l, m2, r)) return BisimViolation{BisimClause::Atoms, l, r, {}, {}};
        if (auto c = detail::zigzag_failure(m, m2, am, rel, l.value, r.value))
            return BisimViolation{c->kind == RemovalKind::Forth ? BisimClause::Forth : BisimClause::Back, l, r,
                                  c->agent, {c->witness}};
    }
    return std::nullopt;
}

namespace detail {

class Distinguisher {
public:
    Distinguisher(const SimplicialModel& m, const SimplicialModel& m2, const BisimRelation& rel)
        : m_(m), m2_(m2), rel_(rel), ev_(m), ev2_(m2) {}

    /// Formula true at `l` and not true at `r` (left_true), or true at `r` and not true at `l`.
    Formula run(std::uint32_t l, std::uint32_t r, bool left_true) {
        auto key = std::make_tuple(l, r, left_true);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        Formula f = build(l, r, left_true);
        memo_.emplace(key, f);
        return f;
    }

private:
    Formula build(std::uint32_t l, std::uint32_t r, bool left_true) {
        const RemovalCause& c = *rel_.cause(l, r);
        if (c.kind == RemovalKind::Atoms) return literal(l, r, left_true);

        // A formula true on the side of the unmatched neighbour.
        const bool natural_left = c.kind == RemovalKind::Forth;
        std::vector<Formula> parts;
        if (natural_left) {
            for (auto y2 : m2_.star(c.agent, {r})) parts.push_back(run(c.witness, y2.value, true));
        } else {
            for (auto y : m_.star(c.agent, {l})) parts.push_back(run(y.value, c.witness, false));
        }
        Formula f = diamond(c.agent, conj_all(std::move(parts)));
        if (natural_left == left_true) return f;

        // Need the opposite side: negate, or negate the transform where f is undefined.
        const SimplicialModel& other = left_true ? m_ : m2_;
        const std::uint32_t point = left_true ? l : r;
        Evaluator& ev = left_true ? ev_ : ev2_;
        if (is_defined(ev.at(point, f))) return neg(f);
        return neg(transform(other, {point}, f));
    }

    Formula literal(std::uint32_t l, std::uint32_t r, bool left_true) const {
        const auto& mt = left_true ? m_ : m2_;
        const auto& mo = left_true ? m2_ : m_;
        const FacetId xt{left_true ? l : r};
        const FacetId xo{left_true ? r : l};
        const auto ct = mt.chi(xt), co = mo.chi(xo);
        std::set<AgentId> all(ct.begin(), ct.end());
        all.insert(co.begin(), co.end());
        for (const auto& a : all) {
            bool in_t = ct.count(a) != 0, in_o = co.count(a) != 0;
            if (in_t && !in_o) return alive(a);
            if (!in_t && in_o) return neg(alive(a));
        }
        const auto lt = mt.ell(xt), lo = mo.ell(xo);
        std::set<LocalAtom> atoms(lt.begin(), lt.end());
        atoms.insert(lo.begin(), lo.end());
        for (const auto& p : atoms) {
            bool in_t = lt.count(p) != 0, in_o = lo.count(p) != 0;
            if (in_t && !in_o) return atom(p);
            if (!in_t && in_o) return neg(atom(p));
        }
        throw Error("atom mismatch recorded for pair with equal atoms");
    }

    const SimplicialModel& m_;
    const SimplicialModel& m2_;
    const BisimRelation& rel_;
    Evaluator ev_;
    Evaluator ev2_;
    std::map<std::tuple<std::uint32_t, std::uint32_t, bool>, Formula> memo_;
};

} // namespace detail

/// Formula true at (m, x) and not true at (m2, x2). Throws Bisimilar when the points are bisimilar.
inline Formula distinguish(const SimplicialModel& m, FacetId x, const SimplicialModel& m2, FacetId x2) {
    check_point(m, x);
    check_point(m2, x2);
    BisimRelation rel = max_bisim(m, m2);
    if (rel.contains(x, x2))
        throw Bisimilar(m.facet_label(x) + " and " + m2.facet_label(x2) + " are bisimilar");
    detail::Distinguisher d(m, m2, rel);
    return d.run(x.value, x2.value, true);
}

/// Cause chain for an excluded pair, outermost first, following the recorded witnesses.
inline std::vector<std::string> explain(const SimplicialModel& m, FacetId x, const SimplicialModel& m2, FacetId x2,
                                        const BisimRelation& rel) {
    std::vector<std::string> out;
    std::uint32_t l = x.value, r = x2.value;
    while (!rel.contains(l, r)) {
        const RemovalCause& c = *rel.cause(l, r);
        std::string head = "(" + m.facet_label({l}) + ", " + m2.facet_label({r}) + ") round " +
                           std::to_string(c.round) + ": ";
        if (c.kind == RemovalKind::Atoms) {
            out.push_back(head + "atoms differ");
            break;
        }
        if (c.kind == RemovalKind::Forth) {
            out.push_back(head + "forth fails for " + c.agent + " at " + m.facet_label({c.witness}));
            // Follow the match attempt that survived longest.
            std::uint32_t best = 0;
            int best_round = -1;
            for (auto y2 : m2.star(c.agent, {r}))
                if (int rd = rel.cause(c.witness, y2.value)->round; rd > best_round) best_round = rd, best = y2.value;
            l = c.witness;
            r = best;
        } else {
            out.push_back(head + "back fails for " + c.agent + " at " + m2.facet_label({c.witness}));
            std::uint32_t best = 0;
            int best_round = -1;
            for (auto y : m.star(c.agent, {l}))
                if (int rd = rel.cause(y.value, c.witness)->round; rd > best_round) best_round = rd, best = y.value;
            l = best;
            r = c.witness;
        }
    }
    return out;
}

} // namespace glocal
