#ifndef RSFCA_IMPLICATIONS_HPP
#define RSFCA_IMPLICATIONS_HPP

#include "concepts.hpp"

namespace rsfca {

struct Implication {
    IndexSet premise;
    IndexSet conclusion;
    std::size_t support = 0; // objects having every premise attribute
};

/// Holds in ctx: every object with the premise also has the conclusion.
inline bool is_valid(const FormalContext& ctx, const Implication& imp) {
    return imp.conclusion.is_subset_of(ctx.closure(imp.premise));
}

/// Smallest superset of Y closed under every implication.
inline IndexSet implication_closure(const std::vector<Implication>& implications, IndexSet Y) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& imp : implications)
            if (imp.premise.is_subset_of(Y) && !imp.conclusion.is_subset_of(Y)) {
                Y |= imp.conclusion;
                changed = true;
            }
    }
    return Y;
}

/// Canonical (Duquenne-Guigues) basis. Walks the sets closed under the
/// implications found so far, where a premise only fires on a proper
/// superset of itself, in lectic order; each such set that is not an
/// intent is a pseudo-intent P and contributes P -> P'' \ P.
inline std::vector<Implication> implication_basis(const FormalContext& ctx) {
    std::vector<Implication> basis;
    auto pseudo_close = [&](IndexSet Y) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& imp : basis)
                if (imp.premise.is_proper_subset_of(Y) && !imp.conclusion.is_subset_of(Y)) {
                    Y |= imp.conclusion;
                    changed = true;
                }
        }
        return Y;
    };
    std::optional<IndexSet> current = ctx.no_attributes();
    while (current) {
        IndexSet closed = ctx.closure(*current);
        if (closed != *current)
            basis.push_back({*current, closed - *current, ctx.derive_objects(*current).count()});
        current = next_closure(*current, ctx.attribute_count(), pseudo_close);
    }
    return basis;
}

/// "1 <2> a1=4 a3=2 => a5=1;" lines.
inline void write_implications(std::ostream& out, const FormalContext& ctx,
                               const std::vector<Implication>& implications) {
    for (std::size_t i = 0; i < implications.size(); ++i) {
        const auto& imp = implications[i];
        out << (i + 1) << " <" << imp.support << "> ";
        if (imp.premise.any())
            out << ctx.attribute_names(imp.premise) << ' ';
        out << "=> " << ctx.attribute_names(imp.conclusion) << ";\n";
    }
}

struct ChiefFactor {
    std::size_t attribute = 0;
    std::size_t frequency = 0;
    /// Premises of the implications concluding this attribute.
    std::vector<IndexSet> subconcepts;
};

/// Per-attribute implication frequencies. Each attribute c is scored by
/// summing |premise| over the implications whose conclusion contains c;
/// `subconcepts` lists those premises.
struct ChiefFactorReport {
    std::vector<std::string> attributes;
    std::vector<ChiefFactor> factors; // one per attribute, in attribute order
    std::vector<std::size_t> ranking; // nonzero frequencies, descending; ties by attribute order

    std::size_t frequency(std::string_view attribute) const {
        for (std::size_t i = 0; i < attributes.size(); ++i)
            if (attributes[i] == attribute)
                return factors[i].frequency;
        throw Error(detail::concat("unknown attribute '", attribute, "'"));
    }
};

inline ChiefFactorReport chief_factors(const std::vector<Implication>& implications,
                                       const std::vector<std::string>& attributes) {
    ChiefFactorReport report;
    report.attributes = attributes;
    report.factors.resize(attributes.size());
    for (std::size_t m = 0; m < attributes.size(); ++m)
        report.factors[m].attribute = m;
    for (const auto& imp : implications) {
        if (imp.premise.size() != attributes.size() || imp.conclusion.size() != attributes.size())
            throw Error("implication does not match the attribute list");
        for (auto c = imp.conclusion.find_first(); c != IndexSet::npos; c = imp.conclusion.find_next(c)) {
            report.factors[c].frequency += imp.premise.count();
            report.factors[c].subconcepts.push_back(imp.premise);
        }
    }
    for (auto& f : report.factors)
        std::sort(f.subconcepts.begin(), f.subconcepts.end(), set_order_less);
    for (std::size_t m = 0; m < attributes.size(); ++m)
        if (report.factors[m].frequency > 0)
            report.ranking.push_back(m);
    std::stable_sort(report.ranking.begin(), report.ranking.end(), [&](std::size_t a, std::size_t b) {
        return report.factors[a].frequency > report.factors[b].frequency;
    });
    return report;
}

inline void write_chief_factors(std::ostream& out, const ChiefFactorReport& report) {
    out << "# chief factors: frequency(c) = sum of |premise| over implications whose conclusion holds c\n";
    out << "# rank\tattribute\tfrequency\tsubconcepts\n";
    for (std::size_t r = 0; r < report.ranking.size(); ++r) {
        const auto& f = report.factors[report.ranking[r]];
        out << (r + 1) << '\t' << report.attributes[f.attribute] << '\t' << f.frequency << '\t';
        for (std::size_t i = 0; i < f.subconcepts.size(); ++i) {
            out << (i ? " / " : "");
            bool first = true;
            for (auto m : to_indices(f.subconcepts[i])) {
                out << (first ? "" : ",") << report.attributes[m];
                first = false;
            }
            if (first)
                out << "{}";
        }
        out << '\n';
    }
}

} // namespace rsfca

#endif
