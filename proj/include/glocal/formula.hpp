#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace glocal {

using AgentId = std::string;

/// Local proposition `name@agent`. Identity is the (name, agent) pair.
struct LocalAtom {
    std::string name;
    AgentId agent;

    friend auto operator<=>(const LocalAtom&, const LocalAtom&) = default;
    friend bool operator==(const LocalAtom&, const LocalAtom&) = default;

    std::string str() const { return name + "@" + agent; }
};

enum class FormulaKind : std::uint8_t { GlobalAtom, Local, Not, And, Diamond };

enum class Fragment : std::uint8_t { Lminus, Lplus };

/// Immutable, structurally shared formula over the five primitive constructors.
///
/// Derived connectives (box, or, implies, top, bot) are expanded on construction,
/// so every consumer only ever sees the primitive shapes.
class Formula {
public:
    struct Node;

    FormulaKind kind() const noexcept;
    /// Agent of a global atom or a diamond.
    const AgentId& agent() const noexcept;
    /// Local atom payload; only meaningful for FormulaKind::Local.
    const LocalAtom& atom() const noexcept;
    /// Operand of Not and Diamond.
    const Formula& operand() const noexcept;
    const Formula& lhs() const noexcept;
    const Formula& rhs() const noexcept;

    std::size_t size() const noexcept;
    int modal_depth() const noexcept;
    std::size_t hash() const noexcept;

    /// Stable identity of the shared node, usable as a memo key while the formula is alive.
    const void* id() const noexcept { return node_.get(); }

    friend bool operator==(const Formula& l, const Formula& r) noexcept;
    friend std::strong_ordering operator<=>(const Formula& l, const Formula& r) noexcept;

    static Formula make_global(AgentId a);
    static Formula make_local(LocalAtom p);
    static Formula make_not(Formula f);
    static Formula make_and(Formula l, Formula r);
    static Formula make_diamond(AgentId a, Formula f);

private:
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    std::shared_ptr<const Node> node_;
};

struct Formula::Node {
    FormulaKind kind;
    AgentId agent;
    LocalAtom atom;
    std::vector<Formula> children;
    std::size_t size = 1;
    int depth = 0;
    std::size_t hash = 0;
};

namespace detail {

inline std::size_t hash_combine(std::size_t seed, std::size_t v) noexcept {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

inline std::shared_ptr<Formula::Node> new_node(FormulaKind k) {
    auto n = std::make_shared<Formula::Node>();
    n->kind = k;
    return n;
}

inline void finish(Formula::Node& n) {
    std::size_t h = std::hash<int>{}(static_cast<int>(n.kind));
    h = hash_combine(h, std::hash<std::string>{}(n.agent));
    h = hash_combine(h, std::hash<std::string>{}(n.atom.name));
    h = hash_combine(h, std::hash<std::string>{}(n.atom.agent));
    n.size = 1;
    n.depth = 0;
    for (const auto& c : n.children) {
        h = hash_combine(h, c.hash());
        n.size += c.size();
        n.depth = std::max(n.depth, c.modal_depth());
    }
    if (n.kind == FormulaKind::Diamond) ++n.depth;
    n.hash = h;
}

} // namespace detail

inline FormulaKind Formula::kind() const noexcept { return node_->kind; }
inline const AgentId& Formula::agent() const noexcept { return node_->agent; }
inline const LocalAtom& Formula::atom() const noexcept { return node_->atom; }
inline const Formula& Formula::operand() const noexcept { return node_->children.front(); }
inline const Formula& Formula::lhs() const noexcept { return node_->children[0]; }
inline const Formula& Formula::rhs() const noexcept { return node_->children[1]; }
inline std::size_t Formula::size() const noexcept { return node_->size; }
inline int Formula::modal_depth() const noexcept { return node_->depth; }
inline std::size_t Formula::hash() const noexcept { return node_->hash; }

inline Formula Formula::make_global(AgentId a) {
    auto n = detail::new_node(FormulaKind::GlobalAtom);
    n->agent = std::move(a);
    detail::finish(*n);
    return Formula(std::move(n));
}

inline Formula Formula::make_local(LocalAtom p) {
    auto n = detail::new_node(FormulaKind::Local);
    n->atom = std::move(p);
    detail::finish(*n);
    return Formula(std::move(n));
}

inline Formula Formula::make_not(Formula f) {
    auto n = detail::new_node(FormulaKind::Not);
    n->children.push_back(std::move(f));
    detail::finish(*n);
    return Formula(std::move(n));
}

inline Formula Formula::make_and(Formula l, Formula r) {
    auto n = detail::new_node(FormulaKind::And);
    n->children.push_back(std::move(l));
    n->children.push_back(std::move(r));
    detail::finish(*n);
    return Formula(std::move(n));
}

inline Formula Formula::make_diamond(AgentId a, Formula f) {
    auto n = detail::new_node(FormulaKind::Diamond);
    n->agent = std::move(a);
    n->children.push_back(std::move(f));
    detail::finish(*n);
    return Formula(std::move(n));
}

// Total structural order: size first, then constructor, then payload, then children.
inline std::strong_ordering operator<=>(const Formula& l, const Formula& r) noexcept {
    if (l.node_ == r.node_) return std::strong_ordering::equal;
    if (auto c = l.size() <=> r.size(); c != 0) return c;
    if (auto c = l.kind() <=> r.kind(); c != 0) return c;
    switch (l.kind()) {
    case FormulaKind::GlobalAtom: return l.agent() <=> r.agent();
    case FormulaKind::Local: return l.atom() <=> r.atom();
    case FormulaKind::Diamond:
        if (auto c = l.agent() <=> r.agent(); c != 0) return c;
        return l.operand() <=> r.operand();
    case FormulaKind::Not: return l.operand() <=> r.operand();
    case FormulaKind::And:
        if (auto c = l.lhs() <=> r.lhs(); c != 0) return c;
        return l.rhs() <=> r.rhs();
    }
    return std::strong_ordering::equal;
}

inline bool operator==(const Formula& l, const Formula& r) noexcept {
    if (l.node_ == r.node_) return true;
    if (l.hash() != r.hash() || l.size() != r.size()) return false;
    return (l <=> r) == 0;
}

struct FormulaHash {
    std::size_t operator()(const Formula& f) const noexcept { return f.hash(); }
};

// Primitive constructors.

inline Formula alive(AgentId a) { return Formula::make_global(std::move(a)); }
inline Formula atom(std::string name, AgentId a) { return Formula::make_local({std::move(name), std::move(a)}); }
inline Formula atom(LocalAtom p) { return Formula::make_local(std::move(p)); }
inline Formula neg(Formula f) { return Formula::make_not(std::move(f)); }
inline Formula conj(Formula l, Formula r) { return Formula::make_and(std::move(l), std::move(r)); }
inline Formula diamond(AgentId a, Formula f) { return Formula::make_diamond(std::move(a), std::move(f)); }

// Derived connectives, expanded to primitives.

/// K_a f := !<a>!f
inline Formula box(AgentId a, Formula f) { return neg(diamond(std::move(a), neg(std::move(f)))); }
inline Formula disj(Formula l, Formula r) { return neg(conj(neg(std::move(l)), neg(std::move(r)))); }
/// l -> r := !(l & !r)
inline Formula implies(Formula l, Formula r) { return neg(conj(std::move(l), neg(std::move(r)))); }
/// alive(a) | !alive(a); always defined and true.
inline Formula top(const AgentId& a) { return disj(alive(a), neg(alive(a))); }
inline Formula bot(const AgentId& a) { return neg(top(a)); }

/// Right-nested conjunction of the sorted, deduplicated operands. Requires a nonempty input.
inline Formula conj_all(std::vector<Formula> parts) {
    std::sort(parts.begin(), parts.end());
    parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
    Formula acc = parts.back();
    for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it) acc = conj(*it, acc);
    return acc;
}

inline bool is_box(const Formula& f) {
    return f.kind() == FormulaKind::Not && f.operand().kind() == FormulaKind::Diamond &&
           f.operand().operand().kind() == FormulaKind::Not;
}

namespace detail {

template <class Fn>
void visit_nodes(const Formula& f, Fn&& fn) {
    fn(f);
    if (f.kind() == FormulaKind::Not || f.kind() == FormulaKind::Diamond) {
        visit_nodes(f.operand(), fn);
    } else if (f.kind() == FormulaKind::And) {
        visit_nodes(f.lhs(), fn);
        visit_nodes(f.rhs(), fn);
    }
}

} // namespace detail

/// Agents mentioned anywhere: global atoms, local-atom owners, modalities.
inline std::set<AgentId> agents(const Formula& f) {
    std::set<AgentId> out;
    detail::visit_nodes(f, [&](const Formula& g) {
        if (g.kind() == FormulaKind::GlobalAtom || g.kind() == FormulaKind::Diamond) out.insert(g.agent());
        if (g.kind() == FormulaKind::Local) out.insert(g.atom().agent);
    });
    return out;
}

inline std::set<LocalAtom> atoms(const Formula& f) {
    std::set<LocalAtom> out;
    detail::visit_nodes(f, [&](const Formula& g) {
        if (g.kind() == FormulaKind::Local) out.insert(g.atom());
    });
    return out;
}

/// True iff the formula has no global atom.
inline bool in_lminus(const Formula& f) {
    bool ok = true;
    detail::visit_nodes(f, [&](const Formula& g) {
        if (g.kind() == FormulaKind::GlobalAtom) ok = false;
    });
    return ok;
}

inline bool in_fragment(const Formula& f, Fragment fr) { return fr == Fragment::Lplus || in_lminus(f); }

/// Canonical minimal-parenthesis rendering; parse(print(f)) == f.
inline std::string print(const Formula& f);

namespace detail {

enum class Prec { Impl = 0, Disj = 1, Conj = 2, Unary = 3 };

inline std::string print_at(const Formula& f, Prec ctx);

inline std::string print_prefixed(const std::string& prefix, const Formula& body) {
    std::string inner = print_at(body, Prec::Unary);
    char first = inner.empty() ? ' ' : inner.front();
    if (first == '<' || first == '[' || first == '(') return prefix + inner;
    return prefix + " " + inner;
}

inline std::string print_at(const Formula& f, Prec ctx) {
    switch (f.kind()) {
    case FormulaKind::GlobalAtom: return "alive(" + f.agent() + ")";
    case FormulaKind::Local: return f.atom().str();
    case FormulaKind::Diamond: return print_prefixed("<" + f.agent() + ">", f.operand());
    case FormulaKind::Not:
        if (is_box(f)) return print_prefixed("[" + f.operand().agent() + "]", f.operand().operand().operand());
        return "!" + print_at(f.operand(), Prec::Unary);
    case FormulaKind::And: {
        // The parser nests '&' chains to the left, so only a right-hand And needs parentheses.
        std::string s = print_at(f.lhs(), Prec::Conj) + " & " + print_at(f.rhs(), Prec::Unary);
        return ctx > Prec::Conj ? "(" + s + ")" : s;
    }
    }
    return {};
}

} // namespace detail

inline std::string print(const Formula& f) { return detail::print_at(f, detail::Prec::Impl); }

} // namespace glocal
