#ifndef RSFCA_RULES_HPP
#define RSFCA_RULES_HPP

#include "boolean.hpp"
#include "table.hpp"

#include <compare>

namespace rsfca {

/// attribute = value
struct Descriptor {
    std::string attribute;
    Code value = 0;

    auto operator<=>(const Descriptor&) const = default;
};

inline std::string to_string(const Descriptor& d) { return d.attribute + "=" + std::to_string(d.value); }

inline Descriptor parse_descriptor(std::string_view text) {
    auto t = detail::trim(text);
    auto eq = t.find('=');
    if (eq == std::string_view::npos || eq == 0)
        throw Error(detail::concat("descriptor must look like attr=code, got '", t, "'"));
    return {std::string(detail::trim(t.substr(0, eq))), detail::parse_code(t.substr(eq + 1))};
}

struct RuleMetrics {
    std::size_t support = 0;  // objects satisfying premise and conclusion
    Rational strength;        // support / |U|
    Rational class_strength;  // support / |decision class|
    std::optional<Rational> accuracy; // set by validation
};

struct DecisionRule {
    std::string id;
    std::vector<Descriptor> premise; // one per attribute, in table column order
    Descriptor conclusion;
    std::vector<std::string> support_objects;
    RuleMetrics metrics;
};

inline bool premise_holds(const DecisionRule& r, const DecisionTable& t, std::size_t object) {
    for (auto& d : r.premise)
        if (t.value(object, t.attribute_index(d.attribute)) != d.value)
            return false;
    return true;
}

enum class MatchKind { supports, contradicts, no_fire };

inline std::string_view to_string(MatchKind m) {
    switch (m) {
    case MatchKind::supports:
        return "supports";
    case MatchKind::contradicts:
        return "contradicts";
    case MatchKind::no_fire:
        return "no-fire";
    }
    return "?";
}

inline MatchKind match_object(const DecisionRule& r, const DecisionTable& t, std::size_t object) {
    if (object >= t.object_count())
        throw Error(detail::concat("object index ", object, " out of range"));
    if (!premise_holds(r, t, object))
        return MatchKind::no_fire;
    auto d = t.attribute_index(r.conclusion.attribute);
    return t.value(object, d) == r.conclusion.value ? MatchKind::supports : MatchKind::contradicts;
}

inline MatchKind match_object(const DecisionRule& r, const DecisionTable& t, std::string_view object) {
    return match_object(r, t, t.object_index(object));
}

struct ObjectReducts {
    std::vector<std::vector<Descriptor>> premises;
    /// Some object with the same condition values has another decision.
    bool conflicting = false;
};

/// Minimal descriptor sets of the object's own row that tell it apart from
/// every object of a different decision class. Each is a prime implicant of
/// the object's discernibility function.
inline ObjectReducts object_value_reducts(const DecisionTable& train, std::size_t object) {
    if (object >= train.object_count())
        throw Error(detail::concat("object index ", object, " out of range"));
    const auto d = train.decision_index();
    const auto cond = train.condition_indices();
    std::vector<IndexSet> clauses;
    ObjectReducts out;
    for (std::size_t y = 0; y < train.object_count(); ++y) {
        if (train.value(y, d) == train.value(object, d))
            continue;
        IndexSet c(cond.size());
        for (std::size_t i = 0; i < cond.size(); ++i)
            if (train.value(y, cond[i]) != train.value(object, cond[i]))
                c.set(i);
        if (c.none()) {
            out.conflicting = true;
            return out;
        }
        clauses.push_back(std::move(c));
    }
    for (auto& h : minimal_hitting_sets(std::move(clauses), cond.size())) {
        std::vector<Descriptor> premise;
        for (auto i : to_indices(h))
            premise.push_back({train.attribute(cond[i]).name, train.value(object, cond[i])});
        out.premises.push_back(std::move(premise));
    }
    return out;
}

inline ObjectReducts object_value_reducts(const DecisionTable& train, std::string_view object) {
    return object_value_reducts(train, train.object_index(object));
}

struct RuleInduction {
    std::vector<DecisionRule> rules;
    std::vector<std::string> conflicting_objects;
};

namespace detail {

using PremiseKey = std::vector<std::pair<std::size_t, Code>>;

inline PremiseKey premise_key(const DecisionTable& t, const std::vector<Descriptor>& premise) {
    PremiseKey k;
    for (auto& d : premise)
        k.emplace_back(t.attribute_index(d.attribute), d.value);
    std::sort(k.begin(), k.end());
    return k;
}

inline std::string rule_id(std::size_t i, Code decision) { return concat("R", i, "_", decision); }

inline std::vector<std::size_t> class_members(const DecisionTable& t, std::size_t d, Code decision_class) {
    if (!t.attribute(d).admits(decision_class))
        throw Error(concat("decision class ", decision_class, " is not in the domain of '", t.attribute(d).name, "'"));
    std::vector<std::size_t> members;
    for (std::size_t o = 0; o < t.object_count(); ++o)
        if (t.value(o, d) == decision_class)
            members.push_back(o);
    return members;
}

} // namespace detail

/// Objects of `train` whose decision equals `decision_class`.
inline std::size_t class_size(const DecisionTable& train, Code decision_class) {
    return detail::class_members(train, train.decision_index(), decision_class).size();
}

/// Certain rules for one decision class: the union of every member's
/// object-value reducts, identical premises merged, support and strengths
/// measured over the whole training table. Conflicting members contribute
/// nothing and are listed.
inline RuleInduction induce_rules(const DecisionTable& train, Code decision_class) {
    const auto d = train.decision_index();
    auto members = detail::class_members(train, d, decision_class);
    if (members.empty())
        throw Error(detail::concat("decision class ", decision_class, " has no objects"));

    RuleInduction out;
    std::map<detail::PremiseKey, std::vector<Descriptor>> premises;
    for (auto o : members) {
        auto reducts = object_value_reducts(train, o);
        if (reducts.conflicting) {
            out.conflicting_objects.push_back(train.object_id(o));
            continue;
        }
        for (auto& p : reducts.premises)
            premises.emplace(detail::premise_key(train, p), p);
    }

    const auto universe = static_cast<std::int64_t>(train.object_count());
    const auto class_n = static_cast<std::int64_t>(members.size());
    const Descriptor conclusion{train.attribute(d).name, decision_class};
    for (auto& [key, premise] : premises) {
        DecisionRule r;
        r.id = detail::rule_id(out.rules.size() + 1, decision_class);
        r.premise = premise;
        r.conclusion = conclusion;
        for (auto o : members)
            if (premise_holds(r, train, o))
                r.support_objects.push_back(train.object_id(o));
        r.metrics.support = r.support_objects.size();
        r.metrics.strength = Rational(static_cast<std::int64_t>(r.metrics.support), universe);
        r.metrics.class_strength = Rational(static_cast<std::int64_t>(r.metrics.support), class_n);
        out.rules.push_back(std::move(r));
    }
    return out;
}

/// Declarative stand-in for the domain expert's review of candidate rules.
struct RuleFilter {
    std::size_t min_support = 1;
    std::size_t max_premise_len = 0; // 0 = unlimited
    std::vector<Descriptor> require; // premise must hold at least one, if nonempty
    std::vector<Descriptor> forbid;  // premise must hold none

    bool accepts(const DecisionRule& r) const {
        if (r.metrics.support < min_support)
            return false;
        if (max_premise_len != 0 && r.premise.size() > max_premise_len)
            return false;
        auto in_premise = [&](const Descriptor& d) {
            return std::find(r.premise.begin(), r.premise.end(), d) != r.premise.end();
        };
        if (!require.empty() && std::none_of(require.begin(), require.end(), in_premise))
            return false;
        return std::none_of(forbid.begin(), forbid.end(), in_premise);
    }
};

inline std::vector<DecisionRule> apply_filter(const std::vector<DecisionRule>& rules, const RuleFilter& filter) {
    std::vector<DecisionRule> out;
    std::copy_if(rules.begin(), rules.end(), std::back_inserter(out),
                 [&](const DecisionRule& r) { return filter.accepts(r); });
    return out;
}

inline std::vector<DecisionRule> generate_candidate_rules(const DecisionTable& train, Code decision_class,
                                                          const RuleFilter& filter = {}) {
    return apply_filter(induce_rules(train, decision_class).rules, filter);
}

enum class Verdict { kept, discarded };

struct RuleValidation {
    std::string rule_id;
    std::size_t supported = 0;
    std::size_t non_supported = 0;
    std::optional<Rational> accuracy; // empty when the rule never fires
    Verdict verdict = Verdict::discarded;
    std::string reason; // "below-threshold", "no-coverage" or empty when kept
};

struct ValidationReport {
    Rational threshold;
    std::vector<RuleValidation> entries; // parallel to the validated rule list
};

/// supported / (supported + non_supported); nullopt if the rule never fired.
inline std::optional<Rational> validation_accuracy(std::size_t supported, std::size_t non_supported) {
    if (supported + non_supported == 0)
        return std::nullopt;
    return Rational(static_cast<std::int64_t>(supported), static_cast<std::int64_t>(supported + non_supported));
}

/// A rule is kept when its accuracy reaches the threshold (>=).
inline Verdict verdict_for(const std::optional<Rational>& accuracy, const Rational& threshold) {
    return accuracy && *accuracy >= threshold ? Verdict::kept : Verdict::discarded;
}

/// Scores each rule on `test`: objects where the premise fires count as
/// supported or non-supported; objects where it does not fire are ignored.
inline ValidationReport validate_rules(const std::vector<DecisionRule>& rules, const DecisionTable& test,
                                       const Rational& threshold) {
    if (rules.empty())
        throw Error("no rules to validate");
    if (threshold < Rational(0) || threshold > Rational(1))
        throw Error(detail::concat("threshold must lie in [0,1], got ", to_string(threshold)));
    ValidationReport report{threshold, {}};
    for (const auto& r : rules) {
        RuleValidation v;
        v.rule_id = r.id;
        for (std::size_t o = 0; o < test.object_count(); ++o) {
            switch (match_object(r, test, o)) {
            case MatchKind::supports:
                ++v.supported;
                break;
            case MatchKind::contradicts:
                ++v.non_supported;
                break;
            case MatchKind::no_fire:
                break;
            }
        }
        v.accuracy = validation_accuracy(v.supported, v.non_supported);
        v.verdict = verdict_for(v.accuracy, threshold);
        if (!v.accuracy)
            v.reason = "no-coverage";
        else if (v.verdict == Verdict::discarded)
            v.reason = "below-threshold";
        report.entries.push_back(std::move(v));
    }
    return report;
}

/// Rules marked kept in `report`, with their validation accuracy recorded.
inline std::vector<DecisionRule> kept_rules(const std::vector<DecisionRule>& rules, const ValidationReport& report) {
    if (rules.size() != report.entries.size())
        throw Error("validation report does not match rule list");
    std::vector<DecisionRule> out;
    for (std::size_t i = 0; i < rules.size(); ++i)
        if (report.entries[i].verdict == Verdict::kept) {
            out.push_back(rules[i]);
            out.back().metrics.accuracy = report.entries[i].accuracy;
        }
    return out;
}

} // namespace rsfca

#endif
