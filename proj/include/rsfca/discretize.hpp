#ifndef RSFCA_DISCRETIZE_HPP
#define RSFCA_DISCRETIZE_HPP

#include "table.hpp"

#include <cmath>
#include <limits>
#include <regex>

namespace rsfca {

/// Numeric table in the same CSV layout as DecisionTable, before coding.
struct RawTable {
    std::vector<std::string> names;
    std::vector<AttributeKind> kinds;
    std::vector<std::string> objects;
    std::vector<double> cells; // row-major

    double value(std::size_t o, std::size_t a) const { return cells[o * names.size() + a]; }
};

inline RawTable read_raw_table(std::istream& in) {
    // Reuse the coded reader's header handling, but keep cells as doubles.
    auto rows = detail::read_csv_rows(in);
    if (rows.size() < 2)
        throw Error("table needs a names row and a kinds row");
    const auto& first_kind = rows[1].fields.front();
    const bool labelled = !(first_kind == "C" || first_kind == "D" || first_kind == "c" || first_kind == "d");
    const std::size_t n_attr = rows[1].fields.size() - (labelled ? 1 : 0);
    RawTable raw;
    raw.names = detail::header_cells(rows[0], n_attr);
    for (auto& k : detail::header_cells(rows[1], n_attr))
        raw.kinds.push_back(parse_kind(k));
    if (rows.size() == 2)
        throw Error("no objects");
    std::set<std::string> seen;
    for (std::size_t r = 2; r < rows.size(); ++r) {
        const auto& row = rows[r];
        auto fail = [&](const auto&... msg) {
            return Error(detail::concat("row ", r - 1, " (line ", row.line, "): ", msg...));
        };
        if (row.fields.size() != n_attr + 1)
            throw fail("malformed row, expected ", n_attr + 1, " cells, got ", row.fields.size());
        if (!seen.insert(row.fields[0]).second)
            throw fail("duplicate object id '", row.fields[0], "'");
        raw.objects.push_back(row.fields[0]);
        for (std::size_t a = 0; a < n_attr; ++a) {
            const auto& cell = row.fields[a + 1];
            if (detail::is_missing(cell))
                throw fail("missing value for attribute '", raw.names[a], "'");
            std::size_t used = 0;
            double v = 0;
            try {
                v = std::stod(cell, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != cell.size() || !std::isfinite(v))
                throw fail("attribute '", raw.names[a], "': not a number: '", cell, "'");
            raw.cells.push_back(v);
        }
    }
    return raw;
}

inline RawTable load_raw_table(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(detail::concat("cannot open table '", path, "'"));
    try {
        return read_raw_table(in);
    } catch (const Error& e) {
        throw Error(detail::concat(path, ": ", e.what()));
    }
}

/// Half-open [lo, hi) -> code. The highest bin of an attribute is also
/// closed above, so a value equal to its `hi` still maps to it.
struct Bin {
    double lo = 0;
    double hi = 0;
    Code code = 0;
};

struct AttributeBinning {
    bool passthrough = true;
    std::vector<Bin> bins; // sorted by lo, pairwise disjoint

    /// nullopt when the value falls in a gap.
    std::optional<Code> code_for(double v) const {
        for (std::size_t i = 0; i < bins.size(); ++i) {
            const auto& b = bins[i];
            bool last = i + 1 == bins.size();
            if (v >= b.lo && (v < b.hi || (last && v == b.hi)))
                return b.code;
        }
        return std::nullopt;
    }

    std::vector<Code> codes() const {
        std::set<Code> s;
        for (auto& b : bins)
            s.insert(b.code);
        return {s.begin(), s.end()};
    }
};

class DiscretizationSpec {
  public:
    /// Validates and stores the bins for one attribute.
    void set_bins(const std::string& attribute, std::vector<Bin> bins) {
        if (bins.empty())
            throw Error(detail::concat("discretization for '", attribute, "' has no intervals"));
        for (auto& b : bins)
            if (!(b.lo < b.hi))
                throw Error(detail::concat("discretization for '", attribute, "': interval [", b.lo, ", ", b.hi,
                                           ") is empty or inverted"));
        std::sort(bins.begin(), bins.end(), [](const Bin& x, const Bin& y) { return x.lo < y.lo; });
        for (std::size_t i = 1; i < bins.size(); ++i)
            if (bins[i].lo < bins[i - 1].hi)
                throw Error(detail::concat("discretization for '", attribute, "': intervals [", bins[i - 1].lo,
                                           ", ", bins[i - 1].hi, ") and [", bins[i].lo, ", ", bins[i].hi,
                                           ") overlap"));
        binnings_[attribute] = AttributeBinning{false, std::move(bins)};
    }

    void set_passthrough(const std::string& attribute) { binnings_[attribute] = AttributeBinning{}; }

    /// Unlisted attributes pass through.
    const AttributeBinning& binning(const std::string& attribute) const {
        static const AttributeBinning identity{};
        auto it = binnings_.find(attribute);
        return it == binnings_.end() ? identity : it->second;
    }

    const std::map<std::string, AttributeBinning>& binnings() const { return binnings_; }

  private:
    std::map<std::string, AttributeBinning> binnings_;
};

namespace detail {

inline double parse_bound(const std::string& s) {
    auto t = std::string(trim(s));
    if (t == "-inf" || t == "-INF")
        return -std::numeric_limits<double>::infinity();
    if (t == "inf" || t == "+inf" || t == "INF")
        return std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != t.size() || used == 0)
        throw Error(concat("bad interval bound '", t, "'"));
    return v;
}

} // namespace detail

/// Discretization file, one key per attribute in a `[discretization]`
/// section:
///
///     [discretization]
///     cholesterol = [-inf, 160, 1] [160, 190, 2] [190, 250, 3] [250, inf, 4]
///     chest_pain  = passthrough
///
/// Each triple is `[lo, hi, code]` meaning lo <= v < hi -> code.
inline DiscretizationSpec read_discretization(std::istream& in) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw Error(detail::concat("discretization: ", e.message(), " (line ", e.line(), ")"));
    }
    DiscretizationSpec spec;
    auto section = tree.get_child_optional("discretization");
    if (!section)
        throw Error("discretization: missing [discretization] section");
    static const std::regex triple(R"(\[\s*([^,\]\s]+)\s*,\s*([^,\]\s]+)\s*,\s*([^,\]\s]+)\s*\])");
    for (auto& [name, node] : *section) {
        auto text = node.get_value<std::string>();
        if (detail::trim(text) == "passthrough") {
            spec.set_passthrough(name);
            continue;
        }
        std::vector<Bin> bins;
        std::string rest;
        auto begin = std::sregex_iterator(text.begin(), text.end(), triple);
        std::size_t consumed = 0;
        for (auto it = begin; it != std::sregex_iterator(); ++it) {
            auto& m = *it;
            rest += text.substr(consumed, static_cast<std::size_t>(m.position()) - consumed);
            consumed = static_cast<std::size_t>(m.position() + m.length());
            try {
                bins.push_back(Bin{detail::parse_bound(m[1]), detail::parse_bound(m[2]), detail::parse_code(m[3].str())});
            } catch (const Error& e) {
                throw Error(detail::concat("discretization for '", name, "': ", e.what()));
            }
        }
        rest += text.substr(consumed);
        for (char c : rest)
            if (!std::isspace(static_cast<unsigned char>(c)) && c != ',')
                throw Error(detail::concat("discretization for '", name, "': cannot parse '", text, "'"));
        spec.set_bins(name, std::move(bins));
    }
    return spec;
}

inline DiscretizationSpec load_discretization(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(detail::concat("cannot open discretization spec '", path, "'"));
    return read_discretization(in);
}

/// Codes every cell. Binned attributes get their bin codes as domain;
/// pass-through attributes must already hold non-negative integers. When
/// `schema` is given, produced codes must lie in its domains.
inline DecisionTable discretize(const RawTable& raw, const DiscretizationSpec& spec,
                                std::span<const AttributeSchema> schema = {}) {
    const auto n_attr = raw.names.size();
    for (auto& [name, _] : spec.binnings())
        if (std::find(raw.names.begin(), raw.names.end(), name) == raw.names.end())
            throw Error(detail::concat("discretization names unknown attribute '", name, "'"));
    if (!schema.empty() && schema.size() != n_attr)
        throw Error("schema size does not match raw table");

    std::vector<AttributeSchema> attrs(n_attr);
    std::vector<std::set<Code>> observed(n_attr);
    std::vector<Code> cells;
    cells.reserve(raw.cells.size());
    for (std::size_t o = 0; o < raw.objects.size(); ++o) {
        for (std::size_t a = 0; a < n_attr; ++a) {
            const auto& binning = spec.binning(raw.names[a]);
            const double v = raw.value(o, a);
            Code c = 0;
            if (binning.passthrough) {
                if (v < 0 || v != std::floor(v) || v > std::numeric_limits<Code>::max())
                    throw Error(detail::concat("row ", o + 1, ": pass-through attribute '", raw.names[a],
                                               "' holds non-code value ", v));
                c = static_cast<Code>(v);
            } else if (auto code = binning.code_for(v)) {
                c = *code;
            } else {
                throw Error(detail::concat("row ", o + 1, ": attribute '", raw.names[a], "' value ", v,
                                           " falls in no interval"));
            }
            if (!schema.empty() && !schema[a].admits(c))
                throw Error(detail::concat("row ", o + 1, ": code ", c, " not in domain of attribute '",
                                           raw.names[a], "'"));
            observed[a].insert(c);
            cells.push_back(c);
        }
    }
    for (std::size_t a = 0; a < n_attr; ++a) {
        if (!schema.empty()) {
            if (schema[a].name != raw.names[a])
                throw Error(detail::concat("schema column ", a + 1, " is '", schema[a].name, "', raw table has '",
                                           raw.names[a], "'"));
            attrs[a] = schema[a];
            continue;
        }
        attrs[a].name = raw.names[a];
        attrs[a].kind = raw.kinds[a];
        const auto& binning = spec.binning(raw.names[a]);
        if (binning.passthrough)
            attrs[a].domain.assign(observed[a].begin(), observed[a].end());
        else
            attrs[a].domain = binning.codes();
        if (attrs[a].domain.empty())
            attrs[a].domain.push_back(0);
    }
    return DecisionTable(raw.objects, std::move(attrs), std::move(cells));
}

/// Coded table back to a raw one (codes as numbers); used to re-run
/// discretize over already-coded data.
inline RawTable to_raw(const DecisionTable& t) {
    RawTable raw;
    for (auto& a : t.attributes()) {
        raw.names.push_back(a.name);
        raw.kinds.push_back(a.kind);
    }
    raw.objects = t.objects();
    for (std::size_t o = 0; o < t.object_count(); ++o)
        for (auto v : t.row(o))
            raw.cells.push_back(static_cast<double>(v));
    return raw;
}

} // namespace rsfca

#endif
