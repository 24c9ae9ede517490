#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <set>
#include <vector>

#include "errors.hpp"
#include "formula.hpp"

namespace glocal {

struct Vocabulary {
    std::set<AgentId> agents;
    std::set<LocalAtom> local_atoms;

    /// Every agent in `agent_list` gets one local atom per name in `names`.
    static Vocabulary uniform(const std::vector<AgentId>& agent_list, const std::vector<std::string>& names) {
        Vocabulary v;
        for (const auto& a : agent_list) {
            v.agents.insert(a);
            for (const auto& n : names) v.local_atoms.insert({n, a});
        }
        return v;
    }
};

inline constexpr std::size_t kDefaultFormulaBudget = 20'000'000;

/// Exhaustive generator of canonical formulas over a vocabulary.
///
/// Canonical means: no double negation, and conjunctions are right-nested chains whose
/// conjuncts are strictly increasing in the structural order (so no duplicates). Every
/// formula within the bounds is semantically equal to exactly one canonical formula of no
/// larger size. Formulas come out in increasing size, each size block in structural order.
class FormulaEnumerator {
public:
    FormulaEnumerator(Vocabulary vocab, int max_modal_depth, std::size_t max_size, Fragment fragment,
                      std::size_t budget = kDefaultFormulaBudget)
        : vocab_(std::move(vocab)), max_depth_(max_modal_depth), max_size_(max_size), fragment_(fragment),
          budget_(budget) {
        if (max_size_ < 1) throw InvalidParam("max_size must be at least 1");
        if (max_depth_ < 0) throw InvalidParam("max_modal_depth must be non-negative");
        for (const auto& p : vocab_.local_atoms)
            if (!vocab_.agents.count(p.agent))
                throw InvalidParam("local atom " + p.str() + " belongs to an agent outside the vocabulary");
    }

    /// Calls `fn` on each formula in order until it returns false. Returns the number visited.
    std::size_t for_each(const std::function<bool(const Formula&)>& fn) {
        buckets_.assign(max_size_ + 1, {});
        std::size_t produced = 0;
        for (std::size_t s = 1; s <= max_size_; ++s) {
            build_bucket(s);
            produced += buckets_[s].size();
            if (produced > budget_)
                throw BudgetExceeded("formula enumeration exceeded budget of " + std::to_string(budget_) +
                                     " formulas at size " + std::to_string(s));
            for (const auto& f : buckets_[s])
                if (!fn(f)) return produced;
        }
        return produced;
    }

    std::vector<Formula> all() {
        std::vector<Formula> out;
        for_each([&](const Formula& f) {
            out.push_back(f);
            return true;
        });
        return out;
    }

private:
    static const Formula& first_conjunct(const Formula& f) {
        return f.kind() == FormulaKind::And ? f.lhs() : f;
    }

    void build_bucket(std::size_t s) {
        auto& out = buckets_[s];
        if (s == 1) {
            if (fragment_ == Fragment::Lplus)
                for (const auto& a : vocab_.agents) out.push_back(alive(a));
            for (const auto& p : vocab_.local_atoms) out.push_back(atom(p));
        } else {
            for (const auto& f : buckets_[s - 1]) {
                if (f.kind() != FormulaKind::Not) out.push_back(neg(f));
                if (f.modal_depth() < max_depth_)
                    for (const auto& a : vocab_.agents) out.push_back(diamond(a, f));
            }
            for (std::size_t i = 1; i + 2 <= s; ++i) {
                std::size_t j = s - 1 - i;
                for (const auto& l : buckets_[i]) {
                    if (l.kind() == FormulaKind::And) continue;
                    for (const auto& r : buckets_[j])
                        if (l < first_conjunct(r)) out.push_back(conj(l, r));
                }
            }
        }
        std::sort(out.begin(), out.end());
    }

    Vocabulary vocab_;
    int max_depth_;
    std::size_t max_size_;
    Fragment fragment_;
    std::size_t budget_;
    std::vector<std::vector<Formula>> buckets_;
};

inline std::vector<Formula> enumerate_formulas(const Vocabulary& vocab, int max_modal_depth, std::size_t max_size,
                                               Fragment fragment, std::size_t budget = kDefaultFormulaBudget) {
    return FormulaEnumerator(vocab, max_modal_depth, max_size, fragment, budget).all();
}

} // namespace glocal
