#ifndef RSFCA_ROUGH_HPP
#define RSFCA_ROUGH_HPP

#include "boolean.hpp"
#include "table.hpp"

namespace rsfca {

/// Equivalence classes of the indiscernibility relation over a set of
/// attributes. Blocks appear in order of their first object, and objects
/// within a block ascend, so two partitions of the same universe are equal
/// exactly when their `block_of` vectors are.
struct Partition {
    std::vector<std::size_t> attributes;
    std::vector<std::vector<std::size_t>> blocks;
    std::vector<std::size_t> block_of;

    std::size_t universe_size() const { return block_of.size(); }

    bool same_blocks(const Partition& o) const { return block_of == o.block_of; }

    /// Every block of *this lies inside one block of `coarser`.
    bool refines(const Partition& coarser) const {
        if (coarser.universe_size() != universe_size())
            return false;
        for (const auto& b : blocks)
            for (auto o : b)
                if (coarser.block_of[o] != coarser.block_of[b.front()])
                    return false;
        return true;
    }

    IndexSet block_set(std::size_t b) const {
        IndexSet s(universe_size());
        for (auto o : blocks.at(b))
            s.set(o);
        return s;
    }
};

inline Partition indiscernibility_partition(const DecisionTable& t, std::span<const std::size_t> attrs) {
    for (auto a : attrs)
        if (a >= t.attribute_count())
            throw Error(detail::concat("attribute index ", a, " out of range"));
    Partition p;
    p.attributes.assign(attrs.begin(), attrs.end());
    std::sort(p.attributes.begin(), p.attributes.end());
    p.attributes.erase(std::unique(p.attributes.begin(), p.attributes.end()), p.attributes.end());
    p.block_of.resize(t.object_count());
    std::map<std::vector<Code>, std::size_t> seen;
    std::vector<Code> key(p.attributes.size());
    for (std::size_t o = 0; o < t.object_count(); ++o) {
        for (std::size_t i = 0; i < p.attributes.size(); ++i)
            key[i] = t.value(o, p.attributes[i]);
        auto [it, fresh] = seen.emplace(key, p.blocks.size());
        if (fresh)
            p.blocks.emplace_back();
        p.blocks[it->second].push_back(o);
        p.block_of[o] = it->second;
    }
    return p;
}

inline Partition indiscernibility_partition(const DecisionTable& t, std::span<const std::string> names) {
    auto idx = t.attribute_indices(names);
    return indiscernibility_partition(t, std::span<const std::size_t>(idx));
}

inline Partition indiscernibility_partition(const DecisionTable& t, std::initializer_list<std::string> names) {
    std::vector<std::string> v(names);
    return indiscernibility_partition(t, std::span<const std::string>(v));
}

struct ApproximationResult {
    IndexSet target;
    IndexSet lower;
    IndexSet upper;
    IndexSet boundary;
    /// |lower| / |upper|; 1 when upper is empty (the empty set is definable).
    Rational accuracy;
};

inline ApproximationResult approximate(const Partition& p, const IndexSet& target) {
    if (target.size() != p.universe_size())
        throw Error(detail::concat("target set spans ", target.size(), " objects, partition has ", p.universe_size()));
    ApproximationResult r{target, IndexSet(target.size()), IndexSet(target.size()), {}, Rational(1)};
    for (std::size_t b = 0; b < p.blocks.size(); ++b) {
        const auto& block = p.blocks[b];
        bool any = false, all = true;
        for (auto o : block) {
            if (target.test(o))
                any = true;
            else
                all = false;
        }
        if (any)
            for (auto o : block)
                r.upper.set(o);
        if (all)
            for (auto o : block)
                r.lower.set(o);
    }
    r.boundary = r.upper - r.lower;
    if (r.upper.any())
        r.accuracy = Rational(static_cast<std::int64_t>(r.lower.count()), static_cast<std::int64_t>(r.upper.count()));
    return r;
}

inline bool is_definable(const ApproximationResult& r) { return r.boundary.none(); }

inline bool is_dispensable(const DecisionTable& t, std::span<const std::size_t> P, std::size_t a) {
    if (std::find(P.begin(), P.end(), a) == P.end())
        throw Error(detail::concat("attribute '", t.attribute(a).name, "' is not in the attribute set"));
    std::vector<std::size_t> rest;
    for (auto x : P)
        if (x != a)
            rest.push_back(x);
    return indiscernibility_partition(t, P).same_blocks(indiscernibility_partition(t, rest));
}

inline bool is_dispensable(const DecisionTable& t, std::span<const std::string> P, std::string_view a) {
    auto idx = t.attribute_indices(P);
    return is_dispensable(t, idx, t.attribute_index(a));
}

/// Attribute sets are kept as sorted index lists.
using AttributeList = std::vector<std::size_t>;

struct ReductSet {
    std::vector<AttributeList> reducts; // by size, then lexicographically
    AttributeList core;
};

enum class ReductStrategy { automatic, exhaustive, discernibility };

struct ReductOptions {
    ReductStrategy strategy = ReductStrategy::automatic;
    /// automatic uses exhaustive search up to this many attributes.
    std::size_t exhaustive_limit = 12;
    /// exhaustive search refuses attribute sets larger than this.
    std::size_t exhaustive_hard_cap = 24;
};

namespace detail {

inline AttributeList sorted_unique(std::span<const std::size_t> P) {
    AttributeList v(P.begin(), P.end());
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

inline AttributeList intersect_all(const std::vector<AttributeList>& sets) {
    if (sets.empty())
        return {};
    AttributeList acc = sets.front();
    for (std::size_t i = 1; i < sets.size(); ++i) {
        AttributeList next;
        std::set_intersection(acc.begin(), acc.end(), sets[i].begin(), sets[i].end(), std::back_inserter(next));
        acc = std::move(next);
    }
    return acc;
}

inline void sort_attribute_lists(std::vector<AttributeList>& v) {
    std::sort(v.begin(), v.end(), [](const AttributeList& a, const AttributeList& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
}

/// Enumerates subsets of `P` by increasing size, keeping those accepted by
/// `preserves` that contain no smaller accepted set. `preserves` must be
/// monotone (supersets of an accepted set are accepted).
template <typename Pred> std::vector<AttributeList> minimal_subsets(const AttributeList& P, Pred preserves) {
    std::vector<AttributeList> found;
    const auto n = P.size();
    std::vector<std::size_t> pick;
    for (std::size_t k = 0; k <= n; ++k) {
        pick.resize(k);
        for (std::size_t i = 0; i < k; ++i)
            pick[i] = i;
        for (;;) {
            AttributeList subset(k);
            for (std::size_t i = 0; i < k; ++i)
                subset[i] = P[pick[i]];
            bool has_smaller = std::any_of(found.begin(), found.end(), [&](const AttributeList& f) {
                return std::includes(subset.begin(), subset.end(), f.begin(), f.end());
            });
            if (!has_smaller && preserves(subset))
                found.push_back(subset);
            // next k-combination of 0..n-1
            std::size_t i = k;
            while (i > 0 && pick[i - 1] == n - k + i - 1)
                --i;
            if (i == 0)
                break;
            ++pick[i - 1];
            for (std::size_t j = i; j < k; ++j)
                pick[j] = pick[j - 1] + 1;
        }
    }
    return found;
}

inline std::vector<AttributeList> lists_from_sets(const std::vector<IndexSet>& sets, const AttributeList& P) {
    std::vector<AttributeList> out;
    for (auto& s : sets) {
        AttributeList l;
        for (auto i : to_indices(s))
            l.push_back(P[i]);
        out.push_back(std::move(l));
    }
    sort_attribute_lists(out);
    return out;
}

inline bool use_exhaustive(const ReductOptions& opt, std::size_t n) {
    switch (opt.strategy) {
    case ReductStrategy::exhaustive:
        if (n > opt.exhaustive_hard_cap)
            throw Error(concat("exhaustive reduct search refused: ", n, " attributes exceed cap of ",
                               opt.exhaustive_hard_cap));
        return true;
    case ReductStrategy::discernibility:
        return false;
    case ReductStrategy::automatic:
        return n <= opt.exhaustive_limit;
    }
    return false;
}

} // namespace detail

/// All minimal P' of P with I(P') = I(P), and their intersection.
inline ReductSet reducts_and_core(const DecisionTable& t, std::span<const std::size_t> attrs,
                                  const ReductOptions& opt = {}) {
    auto P = detail::sorted_unique(attrs);
    if (P.empty())
        throw Error("reduct search needs a nonempty attribute set");
    ReductSet out;
    if (detail::use_exhaustive(opt, P.size())) {
        auto full = indiscernibility_partition(t, P);
        out.reducts = detail::minimal_subsets(
            P, [&](const AttributeList& s) { return indiscernibility_partition(t, s).same_blocks(full); });
        detail::sort_attribute_lists(out.reducts);
    } else {
        // Discernibility matrix: one clause per pair of P-discernible objects.
        std::vector<IndexSet> clauses;
        for (std::size_t x = 0; x < t.object_count(); ++x)
            for (std::size_t y = x + 1; y < t.object_count(); ++y) {
                IndexSet c(P.size());
                for (std::size_t i = 0; i < P.size(); ++i)
                    if (t.value(x, P[i]) != t.value(y, P[i]))
                        c.set(i);
                if (c.any())
                    clauses.push_back(std::move(c));
            }
        out.reducts = detail::lists_from_sets(minimal_hitting_sets(std::move(clauses), P.size()), P);
    }
    out.core = detail::intersect_all(out.reducts);
    return out;
}

inline ReductSet reducts_and_core(const DecisionTable& t, std::span<const std::string> names,
                                  const ReductOptions& opt = {}) {
    auto idx = t.attribute_indices(names);
    return reducts_and_core(t, std::span<const std::size_t>(idx), opt);
}

/// Indispensable attributes of P, found one removal at a time.
inline AttributeList indispensable_attributes(const DecisionTable& t, std::span<const std::size_t> attrs) {
    auto P = detail::sorted_unique(attrs);
    AttributeList out;
    for (auto a : P)
        if (!is_dispensable(t, P, a))
            out.push_back(a);
    return out;
}

/// Objects whose P-block is contained in a single block of `decision`.
inline IndexSet positive_region(const DecisionTable& t, std::span<const std::size_t> P,
                                std::span<const std::size_t> decision) {
    auto cond = indiscernibility_partition(t, P);
    auto dec = indiscernibility_partition(t, decision);
    IndexSet pos(t.object_count());
    for (auto& block : cond.blocks) {
        bool pure = std::all_of(block.begin(), block.end(),
                                [&](std::size_t o) { return dec.block_of[o] == dec.block_of[block.front()]; });
        if (pure)
            for (auto o : block)
                pos.set(o);
    }
    return pos;
}

/// Decision-relative reducts: minimal P' of P with POS_{P'}(D) = POS_P(D).
inline ReductSet relative_reducts(const DecisionTable& t, std::span<const std::size_t> attrs,
                                  std::span<const std::size_t> decision, const ReductOptions& opt = {}) {
    auto P = detail::sorted_unique(attrs);
    if (P.empty())
        throw Error("reduct search needs a nonempty attribute set");
    auto D = detail::sorted_unique(decision);
    const auto pos = positive_region(t, P, D);
    ReductSet out;
    if (detail::use_exhaustive(opt, P.size())) {
        out.reducts = detail::minimal_subsets(P, [&](const AttributeList& s) { return positive_region(t, s, D) == pos; });
        detail::sort_attribute_lists(out.reducts);
    } else {
        auto dec = indiscernibility_partition(t, D);
        std::vector<IndexSet> clauses;
        for (std::size_t x = 0; x < t.object_count(); ++x)
            for (std::size_t y = x + 1; y < t.object_count(); ++y) {
                if (dec.block_of[x] == dec.block_of[y] || !(pos.test(x) || pos.test(y)))
                    continue;
                IndexSet c(P.size());
                for (std::size_t i = 0; i < P.size(); ++i)
                    if (t.value(x, P[i]) != t.value(y, P[i]))
                        c.set(i);
                if (c.any())
                    clauses.push_back(std::move(c));
            }
        out.reducts = detail::lists_from_sets(minimal_hitting_sets(std::move(clauses), P.size()), P);
    }
    out.core = detail::intersect_all(out.reducts);
    return out;
}

} // namespace rsfca

#endif
