#ifndef RSFCA_BOOLEAN_HPP
#define RSFCA_BOOLEAN_HPP

#include "common.hpp"

#include <algorithm>

namespace rsfca {

/// Orders sets by size, then by their ascending member lists.
inline bool set_order_less(const IndexSet& a, const IndexSet& b) {
    auto ca = a.count(), cb = b.count();
    if (ca != cb)
        return ca < cb;
    return to_indices(a) < to_indices(b);
}

/// Drops duplicates and any set that is a superset of another (absorption
/// law for a CNF: x & (x | y) = x).
inline std::vector<IndexSet> absorb(std::vector<IndexSet> sets) {
    std::sort(sets.begin(), sets.end(), set_order_less);
    std::vector<IndexSet> kept;
    for (auto& s : sets) {
        bool absorbed = std::any_of(kept.begin(), kept.end(), [&](const IndexSet& k) { return k.is_subset_of(s); });
        if (!absorbed)
            kept.push_back(std::move(s));
    }
    return kept;
}

/// Prime implicants of the monotone CNF whose clauses are `clauses`, i.e.
/// the minimal sets meeting every clause. An empty clause makes the formula
/// unsatisfiable (returns nothing); no clauses yields the single empty set.
inline std::vector<IndexSet> minimal_hitting_sets(std::vector<IndexSet> clauses, std::size_t universe) {
    for (auto& c : clauses) {
        if (c.size() != universe)
            throw Error("clause size does not match universe");
        if (c.none())
            return {};
    }
    clauses = absorb(std::move(clauses));
    std::vector<IndexSet> hits{IndexSet(universe)};
    for (const auto& clause : clauses) {
        std::vector<IndexSet> next;
        std::vector<IndexSet> extended;
        for (auto& h : hits) {
            if (h.intersects(clause)) {
                next.push_back(h);
                continue;
            }
            for (auto a = clause.find_first(); a != IndexSet::npos; a = clause.find_next(a)) {
                IndexSet e = h;
                e.set(a);
                extended.push_back(std::move(e));
            }
        }
        // Sets that already met the clause stay minimal among themselves;
        // extensions survive only if no other candidate is a proper subset.
        for (auto& e : extended)
            next.push_back(std::move(e));
        hits = absorb(std::move(next));
    }
    return hits;
}

} // namespace rsfca

#endif
