#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "formula.hpp"
#include "model.hpp"
#include "semantics.hpp"

namespace glocal {

/// Rooted tree with agent-set node labels and agent edge labels. Node 0 is the root.
struct LifeTree {
    struct Node {
        std::set<AgentId> label;
        /// -1 for the root.
        int parent = -1;
        /// Label of the edge from the parent; empty for the root.
        AgentId edge;
        std::vector<int> children;
        /// Subformula whose (grafted) life tree is rooted here; unset for the root.
        std::optional<Formula> tag;
    };

    std::vector<Node> nodes;

    std::size_t size() const noexcept { return nodes.size(); }
    const Node& root() const { return nodes.front(); }
    const Node& operator[](std::size_t i) const { return nodes.at(i); }

    /// Edge labels occur in both endpoint labels.
    bool coherent() const {
        for (const auto& n : nodes) {
            if (n.parent < 0) continue;
            if (!n.label.count(n.edge) || !nodes[static_cast<std::size_t>(n.parent)].label.count(n.edge)) return false;
        }
        return true;
    }

    /// Same shape, labels and child order. Tags are ignored.
    friend bool operator==(const LifeTree& l, const LifeTree& r) {
        if (l.nodes.size() != r.nodes.size()) return false;
        for (std::size_t i = 0; i < l.nodes.size(); ++i) {
            const auto &a = l.nodes[i], &b = r.nodes[i];
            if (a.label != b.label || a.parent != b.parent || a.edge != b.edge || a.children != b.children)
                return false;
        }
        return true;
    }
};

namespace detail {

/// Appends `src` below node `parent` of `dst` (or as the root when dst is empty); returns the new index of src's root.
inline int append_tree(LifeTree& dst, const LifeTree& src, int parent) {
    const int base = static_cast<int>(dst.nodes.size());
    for (const auto& n : src.nodes) {
        LifeTree::Node c = n;
        c.parent = n.parent < 0 ? parent : n.parent + base;
        for (auto& ch : c.children) ch += base;
        dst.nodes.push_back(std::move(c));
    }
    if (parent >= 0) dst.nodes[static_cast<std::size_t>(parent)].children.push_back(base);
    return base;
}

} // namespace detail

/// Adds `a` to the root label.
inline LifeTree graft(LifeTree t, const AgentId& a) {
    t.nodes.front().label.insert(a);
    return t;
}

inline LifeTree life_tree(const Formula& f) {
    LifeTree t;
    switch (f.kind()) {
    case FormulaKind::GlobalAtom: t.nodes.push_back({}); break;
    case FormulaKind::Local: t.nodes.push_back({{f.atom().agent}, -1, {}, {}, {}}); break;
    case FormulaKind::Not: return life_tree(f.operand());
    case FormulaKind::And: {
        t = life_tree(f.lhs());
        LifeTree r = life_tree(f.rhs());
        t.nodes.front().label.insert(r.root().label.begin(), r.root().label.end());
        for (int c : r.root().children) {
            // Re-root the subtree of c under our root.
            LifeTree sub;
            std::vector<int> stack{c};
            std::map<int, int> remap;
            std::vector<int> order;
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                remap[x] = static_cast<int>(order.size());
                order.push_back(x);
                const auto& ch = r.nodes[static_cast<std::size_t>(x)].children;
                for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
            }
            for (int x : order) {
                LifeTree::Node n = r.nodes[static_cast<std::size_t>(x)];
                n.parent = x == c ? -1 : remap.at(n.parent);
                for (auto& ch : n.children) ch = remap.at(ch);
                sub.nodes.push_back(std::move(n));
            }
            int at = detail::append_tree(t, sub, 0);
            t.nodes[static_cast<std::size_t>(at)].edge = r.nodes[static_cast<std::size_t>(c)].edge;
        }
        break;
    }
    case FormulaKind::Diamond: {
        t.nodes.push_back({{f.agent()}, -1, {}, {}, {}});
        LifeTree sub = graft(life_tree(f.operand()), f.agent());
        int at = detail::append_tree(t, sub, 0);
        t.nodes[static_cast<std::size_t>(at)].edge = f.agent();
        t.nodes[static_cast<std::size_t>(at)].tag = f.operand();
        break;
    }
    }
    return t;
}

/// Node-to-facet assignment of an embedding, indexed like the tree's nodes.
struct Embedding {
    std::vector<FacetId> assignment;
};

/// Why a tree does not embed at a facet.
struct NotEmbeddable {
    /// Root-label agents dead at the facet; empty when the failure is a child.
    std::vector<AgentId> missing_agents;
    /// Child of the root that embeds at no adjacent facet.
    std::optional<int> child;
    AgentId edge;
};

struct EmbedResult {
    std::optional<Embedding> embedding;
    std::optional<NotEmbeddable> failure;

    explicit operator bool() const noexcept { return embedding.has_value(); }
};

namespace detail {

class Embedder {
public:
    Embedder(const SimplicialModel& m, const LifeTree& t)
        : m_(m), t_(t), memo_(t.size(), std::vector<std::int8_t>(m.facet_count(), -1)) {}

    /// Whether the subtree at `node` embeds with `node` mapped to `f`.
    bool fits(int node, std::uint32_t f) {
        auto& slot = memo_[static_cast<std::size_t>(node)][f];
        if (slot >= 0) return slot;
        slot = check(node, f) ? 1 : 0;
        return slot;
    }

    bool label_ok(int node, std::uint32_t f) const {
        for (const auto& a : t_[static_cast<std::size_t>(node)].label) {
            auto ai = m_.agent_index(a);
            if (!ai || !m_.alive(f, *ai)) return false;
        }
        return true;
    }

    std::optional<std::uint32_t> child_target(int child, std::uint32_t f) {
        const auto& n = t_[static_cast<std::size_t>(child)];
        auto ai = m_.agent_index(n.edge);
        if (!ai) return std::nullopt;
        for (auto g : m_.neighbours(*ai, f))
            if (fits(child, g)) return g;
        return std::nullopt;
    }

    void fill(int node, std::uint32_t f, std::vector<FacetId>& out) {
        out[static_cast<std::size_t>(node)] = {f};
        for (int c : t_[static_cast<std::size_t>(node)].children) fill(c, *child_target(c, f), out);
    }

private:
    bool check(int node, std::uint32_t f) {
        if (!label_ok(node, f)) return false;
        for (int c : t_[static_cast<std::size_t>(node)].children)
            if (!child_target(c, f)) return false;
        return true;
    }

    const SimplicialModel& m_;
    const LifeTree& t_;
    std::vector<std::vector<std::int8_t>> memo_;
};

} // namespace detail

inline EmbedResult embed(const SimplicialModel& m, FacetId x, const LifeTree& t) {
    check_point(m, x);
    detail::Embedder e(m, t);
    EmbedResult r;
    if (e.fits(0, x.value)) {
        Embedding emb;
        emb.assignment.resize(t.size());
        e.fill(0, x.value, emb.assignment);
        r.embedding = std::move(emb);
        return r;
    }
    NotEmbeddable why;
    for (const auto& a : t.root().label)
        if (auto ai = m.agent_index(a); !ai || !m.alive(x.value, *ai)) why.missing_agents.push_back(a);
    if (why.missing_agents.empty()) {
        for (int c : t.root().children) {
            if (!e.child_target(c, x.value)) {
                why.child = c;
                why.edge = t[static_cast<std::size_t>(c)].edge;
                break;
            }
        }
    }
    r.failure = std::move(why);
    return r;
}

/// Cross-check of two independent definability computations.
inline bool check_embed_equals_definability(const SimplicialModel& m, FacetId x, const Formula& f) {
    return static_cast<bool>(embed(m, x, life_tree(f))) == defines(m, x, f);
}

/// Order in which adjacent facets are visited by transform.
///
/// Facets listed in `preferred` come first, in that order; the rest follow in canonical order.
struct OrderingPolicy {
    std::vector<FacetId> preferred;

    std::vector<FacetId> arrange(std::vector<FacetId> star) const {
        std::vector<FacetId> out;
        for (auto f : preferred)
            if (auto it = std::find(star.begin(), star.end(), f); it != star.end()) {
                out.push_back(f);
                star.erase(it);
            }
        out.insert(out.end(), star.begin(), star.end());
        return out;
    }
};

namespace detail {

inline Formula transform_at(const SimplicialModel& m, FacetId x, const Formula& f, const OrderingPolicy& order,
                            Evaluator& ev) {
    LifeTree t = life_tree(f);
    EmbedResult r = embed(m, x, t);
    if (r) throw AlreadyDefined("formula " + print(f) + " is defined at " + m.facet_label(x));
    const NotEmbeddable& why = *r.failure;
    if (!why.missing_agents.empty()) {
        std::vector<Formula> parts;
        for (const auto& a : t.root().label) parts.push_back(alive(a));
        return conj_all(std::move(parts));
    }
    const auto& child = t[static_cast<std::size_t>(*why.child)];
    const Formula& sub = *child.tag;
    std::optional<Formula> xi;
    for (FacetId y : order.arrange(m.star(why.edge, x))) {
        if (!xi) {
            xi = transform_at(m, y, sub, order, ev);
        } else if (ev.at(y.value, *xi) == TruthValue::True) {
            xi = conj(*xi, transform_at(m, y, sub, order, ev));
        }
    }
    return diamond(why.edge, *xi);
}

} // namespace detail

/// Formula that is false at (m, x) and true at every pointed model where `f` is defined.
///
/// Requires `f` undefined at x. Throws AlreadyDefined otherwise.
inline Formula transform(const SimplicialModel& m, FacetId x, const Formula& f, const OrderingPolicy& order = {}) {
    check_point(m, x);
    Evaluator ev(m);
    return detail::transform_at(m, x, f, order, ev);
}

inline std::string to_dot(const LifeTree& t, const std::string& name = "lifetree") {
    std::string out = "digraph " + name + " {\n  node [shape=box];\n";
    for (std::size_t i = 0; i < t.size(); ++i) {
        std::vector<std::string> l(t[i].label.begin(), t[i].label.end());
        out += "  n" + std::to_string(i) + " [label=\"" + detail::brace(l) + "\"];\n";
    }
    for (std::size_t i = 0; i < t.size(); ++i)
        if (t[i].parent >= 0)
            out += "  n" + std::to_string(t[i].parent) + " -> n" + std::to_string(i) + " [label=\"" + t[i].edge +
                   "\"];\n";
    out += "}\n";
    return out;
}

} // namespace glocal
