#ifndef RSFCA_CONCEPTS_HPP
#define RSFCA_CONCEPTS_HPP

#include "context.hpp"

namespace rsfca {

struct FormalConcept {
    IndexSet extent;
    IndexSet intent;

    bool operator==(const FormalConcept&) const = default;
};

/// Lectically next set after `current` that is closed under `close`, or
/// nullopt when `current` is the last one. Attribute 0 is the most
/// significant position.
template <typename Close>
std::optional<IndexSet> next_closure(const IndexSet& current, std::size_t attribute_count, Close&& close) {
    IndexSet prefix = current;
    for (std::size_t k = attribute_count; k-- > 0;) {
        if (current.test(k)) {
            prefix.reset(k);
            continue;
        }
        // prefix == current restricted to {0..k-1}
        IndexSet candidate = prefix;
        candidate.set(k);
        IndexSet closed = close(candidate);
        IndexSet added = closed - prefix;
        if (added.find_first() == k)
            return closed;
    }
    return std::nullopt;
}

/// All formal concepts, in lectic order of their intents.
inline std::vector<FormalConcept> enumerate_concepts(const FormalContext& ctx) {
    std::vector<FormalConcept> out;
    auto close = [&](const IndexSet& Y) { return ctx.closure(Y); };
    std::optional<IndexSet> intent = close(ctx.no_attributes());
    while (intent) {
        out.push_back({ctx.derive_objects(*intent), *intent});
        intent = next_closure(*intent, ctx.attribute_count(), close);
    }
    return out;
}

/// Concepts ordered by extent inclusion, with the covering relation.
class ConceptLattice {
  public:
    ConceptLattice() = default;

    explicit ConceptLattice(std::vector<FormalConcept> concepts) : concepts_(std::move(concepts)) {
        if (concepts_.empty())
            throw Error("a concept lattice needs at least one concept");
        for (std::size_t i = 0; i < concepts_.size(); ++i) {
            if (!by_extent_.emplace(concepts_[i].extent, i).second)
                throw Error("duplicate concept");
            by_intent_.emplace(concepts_[i].intent, i);
        }
        const auto n = concepts_.size();
        upper_covers_.resize(n);
        lower_covers_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<std::size_t> above;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i && concepts_[i].extent.is_proper_subset_of(concepts_[j].extent))
                    above.push_back(j);
            for (auto j : above) {
                bool covered = std::none_of(above.begin(), above.end(), [&](std::size_t k) {
                    return k != j && concepts_[k].extent.is_proper_subset_of(concepts_[j].extent);
                });
                if (covered) {
                    upper_covers_[i].push_back(j);
                    lower_covers_[j].push_back(i);
                }
            }
        }
        top_ = bottom_ = 0;
        for (std::size_t i = 1; i < n; ++i) {
            if (concepts_[top_].extent.is_subset_of(concepts_[i].extent))
                top_ = i;
            if (concepts_[i].extent.is_subset_of(concepts_[bottom_].extent))
                bottom_ = i;
        }
    }

    std::size_t size() const { return concepts_.size(); }
    const std::vector<FormalConcept>& concepts() const { return concepts_; }
    const FormalConcept& concept_at(std::size_t i) const { return concepts_.at(i); }
    std::size_t top() const { return top_; }
    std::size_t bottom() const { return bottom_; }

    const std::vector<std::size_t>& upper_covers(std::size_t i) const { return upper_covers_.at(i); }
    const std::vector<std::size_t>& lower_covers(std::size_t i) const { return lower_covers_.at(i); }

    /// (sub, super) covering pairs.
    std::vector<std::pair<std::size_t, std::size_t>> edges() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t i = 0; i < upper_covers_.size(); ++i)
            for (auto j : upper_covers_[i])
                out.emplace_back(i, j);
        return out;
    }

    bool leq(std::size_t a, std::size_t b) const {
        return concepts_.at(a).extent.is_subset_of(concepts_.at(b).extent);
    }

    std::optional<std::size_t> find_by_extent(const IndexSet& extent) const {
        auto it = by_extent_.find(extent);
        return it == by_extent_.end() ? std::nullopt : std::optional<std::size_t>(it->second);
    }

    std::optional<std::size_t> find_by_intent(const IndexSet& intent) const {
        auto it = by_intent_.find(intent);
        return it == by_intent_.end() ? std::nullopt : std::optional<std::size_t>(it->second);
    }

    /// Infimum: extent is the intersection of the extents.
    std::size_t meet(std::size_t a, std::size_t b) const {
        if (auto m = find_by_extent(concepts_.at(a).extent & concepts_.at(b).extent))
            return *m;
        throw Error("meet is missing from the concept set");
    }

    /// Supremum: intent is the intersection of the intents.
    std::size_t join(std::size_t a, std::size_t b) const {
        if (auto j = find_by_intent(concepts_.at(a).intent & concepts_.at(b).intent))
            return *j;
        throw Error("join is missing from the concept set");
    }

  private:
    std::vector<FormalConcept> concepts_;
    std::vector<std::vector<std::size_t>> upper_covers_;
    std::vector<std::vector<std::size_t>> lower_covers_;
    std::map<IndexSet, std::size_t> by_extent_;
    std::map<IndexSet, std::size_t> by_intent_;
    std::size_t top_ = 0;
    std::size_t bottom_ = 0;
};

/// Checks each concept is closed in `ctx`, then orders them.
inline ConceptLattice build_lattice(const FormalContext& ctx, std::vector<FormalConcept> concepts) {
    for (std::size_t i = 0; i < concepts.size(); ++i) {
        const auto& c = concepts[i];
        if (c.extent.size() != ctx.object_count() || c.intent.size() != ctx.attribute_count())
            throw Error(detail::concat("concept ", i, " does not belong to this context"));
        if (ctx.derive_attributes(c.extent) != c.intent || ctx.derive_objects(c.intent) != c.extent)
            throw Error(detail::concat("concept ", i, " is not closed: ({", ctx.object_names(c.extent, ","), "}, {",
                                       ctx.attribute_names(c.intent, ","), "})"));
    }
    return ConceptLattice(std::move(concepts));
}

namespace detail {

inline std::string dot_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\')
            out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

} // namespace detail

/// Graphviz digraph with reduced labelling: each attribute is named at its
/// attribute concept (m', m''), each object at its object concept (g'', g').
/// Edges run from a concept to each of its upper covers.
inline std::string export_dot(const FormalContext& ctx, const ConceptLattice& lattice) {
    std::vector<std::vector<std::string>> attr_labels(lattice.size()), obj_labels(lattice.size());
    for (std::size_t m = 0; m < ctx.attribute_count(); ++m) {
        if (auto c = lattice.find_by_extent(ctx.column(m)))
            attr_labels[*c].push_back(ctx.attributes()[m]);
    }
    for (std::size_t g = 0; g < ctx.object_count(); ++g) {
        if (auto c = lattice.find_by_intent(ctx.row(g)))
            obj_labels[*c].push_back(ctx.objects()[g]);
    }
    std::ostringstream out;
    out << "digraph lattice {\n";
    out << "  rankdir=BT;\n";
    out << "  node [shape=box, fontname=\"Helvetica\"];\n";
    auto join = [](const std::vector<std::string>& v) {
        std::string s;
        for (auto& x : v)
            s += (s.empty() ? "" : ", ") + x;
        return s;
    };
    for (std::size_t i = 0; i < lattice.size(); ++i) {
        const auto& c = lattice.concept_at(i);
        out << "  c" << i << " [label=\"" << detail::dot_escape(join(attr_labels[i])) << "\\n"
            << detail::dot_escape(join(obj_labels[i])) << "\", tooltip=\"|extent|=" << c.extent.count()
            << " |intent|=" << c.intent.count() << "\"];\n";
    }
    for (auto [sub, super] : lattice.edges())
        out << "  c" << sub << " -> c" << super << ";\n";
    out << "}\n";
    return out.str();
}

inline void write_concepts(std::ostream& out, const FormalContext& ctx, const std::vector<FormalConcept>& concepts) {
    for (std::size_t i = 0; i < concepts.size(); ++i)
        out << i << "\t({" << ctx.object_names(concepts[i].extent, ", ") << "}, {"
            << ctx.attribute_names(concepts[i].intent, ", ") << "})\n";
}

} // namespace rsfca

#endif
