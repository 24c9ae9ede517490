#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "enumerate.hpp"
#include "errors.hpp"
#include "formula.hpp"
#include "model.hpp"
#include "truth_value.hpp"

namespace glocal {

/// A finite epistemic structure with indexed points.
///
/// SimplicialModel (points = facets, neighbours = stars) and PartialEpistemicModel
/// (points = states, neighbours = equivalence classes) both satisfy it.
template <class S>
concept EpistemicStructure = requires(const S& s, std::size_t p, int a, const std::string& name) {
    { s.point_count() } -> std::convertible_to<std::size_t>;
    { s.agent_index(name) } -> std::same_as<std::optional<int>>;
    { s.alive(p, a) } -> std::convertible_to<bool>;
    { s.local_truth(p, a, name) } -> std::convertible_to<bool>;
    { s.neighbours(a, p) } -> std::convertible_to<std::span<const std::uint32_t>>;
};

/// Three-valued evaluator computing whole denotation vectors, memoized per subformula node.
///
/// The memo keeps the formulas it has seen alive, so node identity stays a valid key. Value
/// rows live in fixed-size chunks and never move. The structure must outlive the evaluator.
template <EpistemicStructure S>
class BasicEvaluator {
public:
    explicit BasicEvaluator(const S& s) : s_(s), n_(s.point_count()) {}

    /// Value of `f` at every point. The span stays valid until clear().
    std::span<const TruthValue> values(const Formula& f) {
        if (auto it = memo_.find(f.id()); it != memo_.end()) return {it->second.row, n_};
        // Children first, so their rows exist before this one is allocated.
        switch (f.kind()) {
        case FormulaKind::Not:
        case FormulaKind::Diamond: values(f.operand()); break;
        case FormulaKind::And:
            values(f.lhs());
            values(f.rhs());
            break;
        default: break;
        }
        TruthValue* row = allocate();
        compute(f, row);
        memo_.emplace(f.id(), Entry{f, row});
        return {row, n_};
    }

    TruthValue at(std::size_t point, const Formula& f) { return values(f)[point]; }

    void clear() {
        memo_.clear();
        chunks_.clear();
        used_ = 0;
    }
    std::size_t memo_size() const noexcept { return memo_.size(); }

private:
    struct Entry {
        Formula keep;
        const TruthValue* row;
    };

    static constexpr std::size_t kChunk = 1 << 16;

    TruthValue* allocate() {
        const std::size_t cap = std::max(kChunk, n_);
        if (chunks_.empty() || used_ + n_ > cap) {
            chunks_.push_back(std::make_unique<TruthValue[]>(cap));
            used_ = 0;
        }
        TruthValue* row = chunks_.back().get() + used_;
        used_ += n_;
        return row;
    }

    const TruthValue* row_of(const Formula& f) const { return memo_.at(f.id()).row; }

    void compute(const Formula& f, TruthValue* out) {
        std::fill(out, out + n_, TruthValue::Undef);
        switch (f.kind()) {
        case FormulaKind::GlobalAtom: {
            auto a = s_.agent_index(f.agent());
            for (std::size_t p = 0; p < n_; ++p)
                out[p] = (a && s_.alive(p, *a)) ? TruthValue::True : TruthValue::False;
            break;
        }
        case FormulaKind::Local: {
            auto a = s_.agent_index(f.atom().agent);
            if (!a) break;
            for (std::size_t p = 0; p < n_; ++p)
                if (s_.alive(p, *a))
                    out[p] = s_.local_truth(p, *a, f.atom().name) ? TruthValue::True : TruthValue::False;
            break;
        }
        case FormulaKind::Not: {
            const TruthValue* v = row_of(f.operand());
            for (std::size_t p = 0; p < n_; ++p) out[p] = !v[p];
            break;
        }
        case FormulaKind::And: {
            const TruthValue* l = row_of(f.lhs());
            const TruthValue* r = row_of(f.rhs());
            for (std::size_t p = 0; p < n_; ++p) out[p] = l[p] && r[p];
            break;
        }
        case FormulaKind::Diamond: {
            auto a = s_.agent_index(f.agent());
            if (!a) break;
            const TruthValue* v = row_of(f.operand());
            for (std::size_t p = 0; p < n_; ++p) {
                TruthValue acc = TruthValue::Undef;
                for (auto q : s_.neighbours(*a, p)) {
                    if (v[q] == TruthValue::True) {
                        acc = TruthValue::True;
                        break;
                    }
                    if (v[q] == TruthValue::False) acc = TruthValue::False;
                }
                out[p] = acc;
            }
            break;
        }
        }
    }

    const S& s_;
    std::size_t n_;
    std::unordered_map<const void*, Entry> memo_;
    std::vector<std::unique_ptr<TruthValue[]>> chunks_;
    std::size_t used_ = 0;
};

using Evaluator = BasicEvaluator<SimplicialModel>;

inline void check_point(const SimplicialModel& m, FacetId x) {
    if (x.value >= m.facet_count()) throw PointNotFacet("facet index " + std::to_string(x.value));
}

inline TruthValue eval(const SimplicialModel& m, FacetId x, const Formula& f) {
    check_point(m, x);
    Evaluator ev(m);
    return ev.at(x.value, f);
}

inline bool defines(const SimplicialModel& m, FacetId x, const Formula& f) { return is_defined(eval(m, x, f)); }
inline bool satisfies(const SimplicialModel& m, FacetId x, const Formula& f) { return is_true(eval(m, x, f)); }

/// Facets where `f` is true.
inline std::vector<FacetId> denotation(const SimplicialModel& m, const Formula& f) {
    Evaluator ev(m);
    auto v = ev.values(f);
    std::vector<FacetId> out;
    for (std::uint32_t i = 0; i < v.size(); ++i)
        if (v[i] == TruthValue::True) out.push_back({i});
    return out;
}

/// Agents of the model plus, for each agent, every local-atom name found anywhere in the model.
inline Vocabulary vocabulary_of(const SimplicialModel& m) {
    std::set<std::string> names;
    for (std::uint32_t v = 0; v < m.vertex_count(); ++v)
        for (const auto& p : m.vertex_atoms(v)) names.insert(p);
    return Vocabulary::uniform(m.agents(), {names.begin(), names.end()});
}

struct EquivalenceResult {
    /// No disagreeing formula within the bounds.
    bool equal = true;
    std::optional<Formula> witness;
    TruthValue left_value = TruthValue::Undef;
    TruthValue right_value = TruthValue::Undef;
    std::size_t formulas_checked = 0;
};

/// Bounded modal-equivalence test over any two structures.
///
/// Sound for inequivalence; for equivalence it only speaks about the enumerated fragment.
template <EpistemicStructure L, EpistemicStructure R>
EquivalenceResult modal_equiv_bounded_generic(const L& left, std::size_t lp, const R& right, std::size_t rp,
                                              const Vocabulary& vocab, int depth, std::size_t size, Fragment fragment,
                                              std::size_t budget = kDefaultFormulaBudget) {
    BasicEvaluator<L> le(left);
    BasicEvaluator<R> re(right);
    EquivalenceResult res;
    FormulaEnumerator(vocab, depth, size, fragment, budget).for_each([&](const Formula& f) {
        ++res.formulas_checked;
        TruthValue l = le.at(lp, f);
        TruthValue r = re.at(rp, f);
        if (l != r) {
            res.equal = false;
            res.witness = f;
            res.left_value = l;
            res.right_value = r;
            return false;
        }
        return true;
    });
    return res;
}

inline EquivalenceResult modal_equiv_bounded(const SimplicialModel& m, FacetId x, const SimplicialModel& m2,
                                             FacetId x2, const Vocabulary& vocab, int depth, std::size_t size,
                                             Fragment fragment, std::size_t budget = kDefaultFormulaBudget) {
    check_point(m, x);
    check_point(m2, x2);
    return modal_equiv_bounded_generic(m, x.value, m2, x2.value, vocab, depth, size, fragment, budget);
}

} // namespace glocal
