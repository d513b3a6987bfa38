// Shared test fixtures and brute-force oracles. The oracles work on plain
// vectors and nested loops so they stay independent of the library paths
// they check.
#pragma once

#include <rsfca/rsfca.hpp>

#include <random>
#include <set>
#include <vector>

namespace fixtures {

using namespace rsfca;

/// The ten-patient table (a1..a6 conditions, d decision).
inline DecisionTable table2() {
    std::vector<std::string> ids{"p1", "p2", "p3", "p4", "p5", "p6", "p7", "p8", "p9", "p10"};
    std::vector<std::vector<Code>> rows{
        {1, 2, 2, 3, 5, 3, 1}, {2, 3, 1, 3, 4, 3, 2}, {3, 1, 2, 3, 6, 3, 1}, {1, 2, 2, 1, 4, 3, 2},
        {3, 1, 2, 1, 5, 3, 2}, {3, 2, 1, 1, 4, 3, 1}, {1, 1, 2, 2, 4, 3, 2}, {2, 3, 1, 2, 6, 3, 1},
        {1, 1, 3, 3, 5, 3, 1}, {2, 2, 2, 2, 5, 3, 1},
    };
    std::vector<AttributeSchema> attrs;
    for (int a = 1; a <= 6; ++a)
        attrs.push_back({"a" + std::to_string(a), AttributeKind::condition, {1, 2, 3}, {}});
    attrs[4].domain = {4, 5, 6};
    attrs.push_back({"d", AttributeKind::decision, {1, 2}, {}});
    std::vector<Code> cells;
    for (auto& r : rows)
        cells.insert(cells.end(), r.begin(), r.end());
    return DecisionTable(ids, attrs, cells);
}

/// Random coded table with `conditions` condition columns and one decision.
inline DecisionTable random_table(std::mt19937_64& rng, std::size_t objects, std::size_t conditions,
                                  Code values, Code decisions = 2) {
    std::vector<std::string> ids;
    for (std::size_t o = 0; o < objects; ++o)
        ids.push_back("x" + std::to_string(o + 1));
    std::vector<AttributeSchema> attrs;
    for (std::size_t a = 0; a < conditions; ++a) {
        AttributeSchema s{"c" + std::to_string(a + 1), AttributeKind::condition, {}, {}};
        for (Code v = 1; v <= values; ++v)
            s.domain.push_back(v);
        attrs.push_back(s);
    }
    AttributeSchema dec{"d", AttributeKind::decision, {}, {}};
    for (Code v = 1; v <= decisions; ++v)
        dec.domain.push_back(v);
    attrs.push_back(dec);
    std::uniform_int_distribution<Code> val(1, values), dval(1, decisions);
    std::vector<Code> cells;
    for (std::size_t o = 0; o < objects; ++o) {
        for (std::size_t a = 0; a < conditions; ++a)
            cells.push_back(val(rng));
        cells.push_back(dval(rng));
    }
    return DecisionTable(ids, attrs, cells);
}

inline FormalContext random_context(std::mt19937_64& rng, std::size_t objects, std::size_t attributes,
                                    double density) {
    std::bernoulli_distribution bit(density);
    std::vector<std::string> g, m;
    std::vector<IndexSet> rows;
    for (std::size_t i = 0; i < objects; ++i)
        g.push_back("g" + std::to_string(i));
    for (std::size_t j = 0; j < attributes; ++j)
        m.push_back("m" + std::to_string(j));
    for (std::size_t i = 0; i < objects; ++i) {
        IndexSet r(attributes);
        for (std::size_t j = 0; j < attributes; ++j)
            if (bit(rng))
                r.set(j);
        rows.push_back(r);
    }
    return FormalContext(g, m, rows);
}

inline FormalContext context_from(const std::vector<std::string>& rows_text) {
    std::vector<std::string> g, m;
    std::vector<IndexSet> rows;
    const auto width = rows_text.empty() ? 0 : rows_text.front().size();
    for (std::size_t j = 0; j < width; ++j)
        m.push_back("m" + std::to_string(j));
    for (std::size_t i = 0; i < rows_text.size(); ++i) {
        g.push_back("g" + std::to_string(i));
        IndexSet r(width);
        for (std::size_t j = 0; j < width; ++j)
            if (rows_text[i][j] == 'X')
                r.set(j);
        rows.push_back(r);
    }
    return FormalContext(g, m, rows);
}

// ---- rough-set oracles ----------------------------------------------------

inline bool agree(const DecisionTable& t, std::size_t x, std::size_t y, const std::vector<std::size_t>& attrs) {
    for (auto a : attrs)
        if (t.value(x, a) != t.value(y, a))
            return false;
    return true;
}

/// Sorted equivalence classes found by pairwise comparison.
inline std::set<std::set<std::size_t>> brute_blocks(const DecisionTable& t, const std::vector<std::size_t>& attrs) {
    std::set<std::set<std::size_t>> out;
    for (std::size_t x = 0; x < t.object_count(); ++x) {
        std::set<std::size_t> cls;
        for (std::size_t y = 0; y < t.object_count(); ++y)
            if (agree(t, x, y, attrs))
                cls.insert(y);
        out.insert(cls);
    }
    return out;
}

inline std::set<std::set<std::size_t>> blocks_of(const Partition& p) {
    std::set<std::set<std::size_t>> out;
    for (auto& b : p.blocks)
        out.insert(std::set<std::size_t>(b.begin(), b.end()));
    return out;
}

inline bool same_relation(const DecisionTable& t, const std::vector<std::size_t>& A, const std::vector<std::size_t>& B) {
    for (std::size_t x = 0; x < t.object_count(); ++x)
        for (std::size_t y = 0; y < t.object_count(); ++y)
            if (agree(t, x, y, A) != agree(t, x, y, B))
                return false;
    return true;
}

inline std::vector<std::size_t> members_of(unsigned mask, const std::vector<std::size_t>& P) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < P.size(); ++i)
        if (mask >> i & 1u)
            s.push_back(P[i]);
    return s;
}

/// All minimal subsets S of P (including the empty set) with I(S) = I(P),
/// by testing every one of the 2^|P| subsets.
inline std::set<std::vector<std::size_t>> brute_reducts(const DecisionTable& t, const std::vector<std::size_t>& P) {
    std::vector<unsigned> ok;
    for (unsigned mask = 0; mask < (1u << P.size()); ++mask)
        if (same_relation(t, members_of(mask, P), P))
            ok.push_back(mask);
    std::set<std::vector<std::size_t>> out;
    for (auto m : ok) {
        bool minimal = true;
        for (auto o : ok)
            if (o != m && (o & m) == o)
                minimal = false;
        if (minimal)
            out.insert(members_of(m, P));
    }
    return out;
}

/// Minimal descriptor subsets of object x's condition row that no object of
/// another decision class matches.
inline std::set<std::vector<Descriptor>> brute_object_reducts(const DecisionTable& t, std::size_t x) {
    auto cond = t.condition_indices();
    auto d = t.decision_index();
    std::vector<unsigned> ok;
    for (unsigned mask = 0; mask < (1u << cond.size()); ++mask) {
        auto attrs = members_of(mask, cond);
        bool discerns = true;
        for (std::size_t y = 0; y < t.object_count(); ++y)
            if (t.value(y, d) != t.value(x, d) && agree(t, x, y, attrs))
                discerns = false;
        if (discerns)
            ok.push_back(mask);
    }
    std::set<std::vector<Descriptor>> out;
    for (auto m : ok) {
        bool minimal = true;
        for (auto o : ok)
            if (o != m && (o & m) == o)
                minimal = false;
        if (!minimal)
            continue;
        std::vector<Descriptor> premise;
        for (auto a : members_of(m, cond))
            premise.push_back({t.attribute(a).name, t.value(x, a)});
        out.insert(premise);
    }
    return out;
}

// ---- FCA oracles ----------------------------------------------------------

/// Y'' by direct quantification over the incidence relation.
inline std::vector<bool> brute_closure(const FormalContext& ctx, const std::vector<bool>& Y) {
    std::vector<bool> ext(ctx.object_count(), true);
    for (std::size_t g = 0; g < ctx.object_count(); ++g)
        for (std::size_t m = 0; m < ctx.attribute_count(); ++m)
            if (Y[m] && !ctx.incident(g, m))
                ext[g] = false;
    std::vector<bool> out(ctx.attribute_count(), true);
    for (std::size_t m = 0; m < ctx.attribute_count(); ++m)
        for (std::size_t g = 0; g < ctx.object_count(); ++g)
            if (ext[g] && !ctx.incident(g, m))
                out[m] = false;
    return out;
}

inline std::vector<bool> bits_of(unsigned mask, std::size_t n) {
    std::vector<bool> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = mask >> i & 1u;
    return v;
}

inline std::vector<bool> to_bools(const IndexSet& s) {
    std::vector<bool> v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        v[i] = s.test(i);
    return v;
}

/// Intents as bool vectors: every closed subset of the attribute set.
inline std::set<std::vector<bool>> brute_intents(const FormalContext& ctx) {
    std::set<std::vector<bool>> out;
    const auto n = ctx.attribute_count();
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        auto Y = bits_of(mask, n);
        if (brute_closure(ctx, Y) == Y)
            out.insert(Y);
    }
    return out;
}

} // namespace fixtures
