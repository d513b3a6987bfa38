#ifndef RSFCA_RULE_IO_HPP
#define RSFCA_RULE_IO_HPP

#include "rules.hpp"

namespace rsfca {

// Rule file: a header line, then one tab-separated record per rule:
//
//   id  premise  conclusion  support_ids  support  strength  class_strength  accuracy
//
// premise descriptors are joined with '&', support ids with ',', rationals
// are written as n/d and a missing accuracy as '-'.

inline constexpr std::string_view rule_file_header =
    "#rules v1\tid\tpremise\tconclusion\tsupport_ids\tsupport\tstrength\tclass_strength\taccuracy";

inline void write_rules(std::ostream& out, const std::vector<DecisionRule>& rules) {
    out << rule_file_header << '\n';
    for (const auto& r : rules) {
        out << r.id << '\t';
        for (std::size_t i = 0; i < r.premise.size(); ++i)
            out << (i ? "&" : "") << to_string(r.premise[i]);
        out << '\t' << to_string(r.conclusion) << '\t';
        for (std::size_t i = 0; i < r.support_objects.size(); ++i)
            out << (i ? "," : "") << r.support_objects[i];
        out << '\t' << r.metrics.support << '\t' << to_string(r.metrics.strength) << '\t'
            << to_string(r.metrics.class_strength) << '\t'
            << (r.metrics.accuracy ? to_string(*r.metrics.accuracy) : std::string("-")) << '\n';
    }
}

inline std::vector<DecisionRule> read_rules(std::istream& in) {
    std::vector<DecisionRule> rules;
    std::string line;
    std::size_t n = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++n;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (detail::trim(line).empty())
            continue;
        if (line.starts_with("#rules v1")) {
            header = true;
            continue;
        }
        if (line.front() == '#')
            continue;
        if (!header)
            throw Error(detail::concat("rule file line ", n, ": missing '#rules v1' header"));
        auto f = detail::split(line, '\t');
        if (f.size() != 8)
            throw Error(detail::concat("rule file line ", n, ": expected 8 fields, got ", f.size()));
        try {
            DecisionRule r;
            r.id = f[0];
            if (!detail::trim(f[1]).empty())
                for (auto& d : detail::split(f[1], '&'))
                    r.premise.push_back(parse_descriptor(d));
            r.conclusion = parse_descriptor(f[2]);
            if (!detail::trim(f[3]).empty())
                r.support_objects = detail::split(f[3], ',');
            r.metrics.support = static_cast<std::size_t>(detail::parse_code(f[4]));
            r.metrics.strength = parse_rational(f[5]);
            r.metrics.class_strength = parse_rational(f[6]);
            if (detail::trim(f[7]) != "-")
                r.metrics.accuracy = parse_rational(f[7]);
            rules.push_back(std::move(r));
        } catch (const Error& e) {
            throw Error(detail::concat("rule file line ", n, ": ", e.what()));
        }
    }
    return rules;
}

inline std::vector<DecisionRule> load_rules(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(detail::concat("cannot open rule file '", path, "'"));
    return read_rules(in);
}

inline void save_rules(const std::string& path, const std::vector<DecisionRule>& rules) {
    std::ofstream out(path);
    if (!out)
        throw Error(detail::concat("cannot write rule file '", path, "'"));
    write_rules(out, rules);
}

/// "IF a1=4, a2=2 THEN d=1"
inline std::string if_then(const DecisionRule& r) {
    std::string s = "IF ";
    for (std::size_t i = 0; i < r.premise.size(); ++i)
        s += (i ? ", " : "") + to_string(r.premise[i]);
    return s + " THEN " + to_string(r.conclusion);
}

inline void write_validation(std::ostream& out, const std::vector<DecisionRule>& rules,
                             const ValidationReport& report) {
    out << "# validation threshold " << to_string(report.threshold) << " (kept when accuracy >= threshold)\n";
    out << "# id\tsupport\tnon_support\taccuracy\tpercent\tverdict\treason\trule\n";
    for (std::size_t i = 0; i < report.entries.size(); ++i) {
        const auto& v = report.entries[i];
        out << v.rule_id << '\t' << v.supported << '\t' << v.non_supported << '\t'
            << (v.accuracy ? to_string(*v.accuracy) : "-") << '\t'
            << (v.accuracy ? std::to_string(floor_percent(*v.accuracy)) + "%" : "-") << '\t'
            << (v.verdict == Verdict::kept ? "kept" : "discarded") << '\t' << (v.reason.empty() ? "-" : v.reason)
            << '\t' << (i < rules.size() ? if_then(rules[i]) : std::string()) << '\n';
    }
}

} // namespace rsfca

#endif
