#ifndef RSFCA_TABLE_HPP
#define RSFCA_TABLE_HPP

#include "common.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <unordered_map>
#include <utility>

namespace rsfca {

enum class AttributeKind { condition, decision };

inline char kind_letter(AttributeKind k) { return k == AttributeKind::condition ? 'C' : 'D'; }

inline AttributeKind parse_kind(std::string_view s) {
    auto t = detail::trim(s);
    if (t == "C" || t == "c")
        return AttributeKind::condition;
    if (t == "D" || t == "d")
        return AttributeKind::decision;
    throw Error(detail::concat("attribute kind must be C or D, got '", t, "'"));
}

struct AttributeSchema {
    std::string name;
    AttributeKind kind = AttributeKind::condition;
    std::vector<Code> domain; // admissible codes, ascending
    std::map<Code, std::string> labels;

    bool admits(Code c) const { return std::binary_search(domain.begin(), domain.end(), c); }

    std::string label(Code c) const {
        auto it = labels.find(c);
        return it == labels.end() ? std::to_string(c) : it->second;
    }

    bool operator==(const AttributeSchema&) const = default;
};

/// Objects x attributes grid of codes. Immutable once built; the constructor
/// enforces unique names/ids and that every cell lies in its column's domain.
class DecisionTable {
  public:
    DecisionTable() = default;

    DecisionTable(std::vector<std::string> objects, std::vector<AttributeSchema> attributes,
                  std::vector<Code> cells)
        : objects_(std::move(objects)), attributes_(std::move(attributes)), cells_(std::move(cells)) {
        if (cells_.size() != objects_.size() * attributes_.size())
            throw Error("cell count does not match objects x attributes");
        for (std::size_t a = 0; a < attributes_.size(); ++a) {
            auto& s = attributes_[a];
            if (s.name.empty())
                throw Error(detail::concat("attribute ", a + 1, " has an empty name"));
            if (s.domain.empty())
                throw Error(detail::concat("attribute '", s.name, "' has an empty domain"));
            std::sort(s.domain.begin(), s.domain.end());
            if (std::adjacent_find(s.domain.begin(), s.domain.end()) != s.domain.end())
                throw Error(detail::concat("attribute '", s.name, "' has duplicate domain codes"));
            if (!attribute_index_.emplace(s.name, a).second)
                throw Error(detail::concat("duplicate attribute name '", s.name, "'"));
        }
        for (std::size_t o = 0; o < objects_.size(); ++o) {
            if (!object_index_.emplace(objects_[o], o).second)
                throw Error(detail::concat("duplicate object id '", objects_[o], "'"));
            for (std::size_t a = 0; a < attributes_.size(); ++a) {
                if (!attributes_[a].admits(value(o, a)))
                    throw Error(detail::concat("object '", objects_[o], "': code ", value(o, a),
                                               " not in domain of attribute '", attributes_[a].name, "'"));
            }
        }
    }

    std::size_t object_count() const { return objects_.size(); }
    std::size_t attribute_count() const { return attributes_.size(); }

    const std::vector<std::string>& objects() const { return objects_; }
    const std::vector<AttributeSchema>& attributes() const { return attributes_; }
    const std::string& object_id(std::size_t o) const { return objects_.at(o); }
    const AttributeSchema& attribute(std::size_t a) const { return attributes_.at(a); }

    Code value(std::size_t object, std::size_t attr) const { return cells_[object * attributes_.size() + attr]; }

    std::span<const Code> row(std::size_t object) const {
        return {cells_.data() + object * attributes_.size(), attributes_.size()};
    }

    std::optional<std::size_t> find_attribute(std::string_view name) const {
        auto it = attribute_index_.find(std::string(name));
        if (it == attribute_index_.end())
            return std::nullopt;
        return it->second;
    }

    std::size_t attribute_index(std::string_view name) const {
        if (auto i = find_attribute(name))
            return *i;
        throw Error(detail::concat("unknown attribute '", name, "'"));
    }

    std::optional<std::size_t> find_object(std::string_view id) const {
        auto it = object_index_.find(std::string(id));
        if (it == object_index_.end())
            return std::nullopt;
        return it->second;
    }

    std::size_t object_index(std::string_view id) const {
        if (auto i = find_object(id))
            return *i;
        throw Error(detail::concat("unknown object '", id, "'"));
    }

    std::vector<std::size_t> attribute_indices(std::span<const std::string> names) const {
        std::vector<std::size_t> out;
        out.reserve(names.size());
        for (auto& n : names)
            out.push_back(attribute_index(n));
        return out;
    }

    std::vector<std::size_t> indices_of(AttributeKind kind) const {
        std::vector<std::size_t> out;
        for (std::size_t a = 0; a < attributes_.size(); ++a)
            if (attributes_[a].kind == kind)
                out.push_back(a);
        return out;
    }

    std::vector<std::size_t> condition_indices() const { return indices_of(AttributeKind::condition); }
    std::vector<std::size_t> decision_indices() const { return indices_of(AttributeKind::decision); }

    /// The single decision column; rule induction needs exactly one.
    std::size_t decision_index() const {
        auto d = decision_indices();
        if (d.size() != 1)
            throw Error(detail::concat("expected exactly one decision attribute, table has ", d.size()));
        return d.front();
    }

    IndexSet all_objects() const {
        IndexSet s(objects_.size());
        s.set();
        return s;
    }

    IndexSet object_set(std::span<const std::string> ids) const {
        IndexSet s(objects_.size());
        for (auto& id : ids)
            s.set(object_index(id));
        return s;
    }

    IndexSet object_set(std::initializer_list<std::string_view> ids) const {
        IndexSet s(objects_.size());
        for (auto id : ids)
            s.set(object_index(id));
        return s;
    }

    std::vector<std::string> object_ids(const IndexSet& s) const {
        std::vector<std::string> out;
        for (auto i : to_indices(s))
            out.push_back(objects_.at(i));
        return out;
    }

    bool operator==(const DecisionTable& o) const {
        return objects_ == o.objects_ && attributes_ == o.attributes_ && cells_ == o.cells_;
    }

  private:
    std::vector<std::string> objects_;
    std::vector<AttributeSchema> attributes_;
    std::vector<Code> cells_;
    std::unordered_map<std::string, std::size_t> attribute_index_;
    std::unordered_map<std::string, std::size_t> object_index_;
};

namespace detail {

struct CsvRow {
    std::size_t line = 0;
    std::vector<std::string> fields;
};

inline std::vector<CsvRow> read_csv_rows(std::istream& in) {
    std::vector<CsvRow> rows;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        auto t = trim(line);
        if (t.empty() || t.front() == '#')
            continue;
        CsvRow r{n, split(t, ',')};
        for (auto& f : r.fields)
            f = std::string(trim(f));
        rows.push_back(std::move(r));
    }
    return rows;
}

/// Header rows may or may not carry a leading cell for the id column.
inline std::vector<std::string> header_cells(const CsvRow& row, std::size_t attribute_count) {
    if (row.fields.size() == attribute_count + 1)
        return {row.fields.begin() + 1, row.fields.end()};
    if (row.fields.size() == attribute_count)
        return row.fields;
    throw Error(concat("line ", row.line, ": header has ", row.fields.size(), " cells, expected ",
                       attribute_count, " or ", attribute_count + 1));
}

inline bool is_missing(std::string_view cell) { return cell.empty() || cell == "?" || cell == "NA"; }

} // namespace detail

/// Reads the three-part CSV layout: names row, kinds row (C/D), then one
/// object per row (id followed by one integer code per attribute). When
/// `schema` is empty, domains are the distinct codes observed per column.
inline DecisionTable read_table(std::istream& in, std::span<const AttributeSchema> schema = {}) {
    auto rows = detail::read_csv_rows(in);
    if (rows.size() < 2)
        throw Error("table needs a names row and a kinds row");
    // A kinds row whose first cell is not C/D carries a label for the id column.
    const auto& first_kind = rows[1].fields.front();
    const bool labelled = !(first_kind == "C" || first_kind == "D" || first_kind == "c" || first_kind == "d");
    if (rows[1].fields.size() < (labelled ? 2u : 1u))
        throw Error(detail::concat("line ", rows[1].line, ": kinds row is empty"));
    const std::size_t n_attr = rows[1].fields.size() - (labelled ? 1 : 0);
    auto names = detail::header_cells(rows[0], n_attr);
    auto kinds_cells = detail::header_cells(rows[1], n_attr);
    if (rows.size() == 2)
        throw Error("no objects");

    std::vector<AttributeSchema> attrs(n_attr);
    for (std::size_t a = 0; a < n_attr; ++a) {
        attrs[a].name = names[a];
        try {
            attrs[a].kind = parse_kind(kinds_cells[a]);
        } catch (const Error& e) {
            throw Error(detail::concat("line ", rows[1].line, ": ", e.what()));
        }
    }
    if (!schema.empty()) {
        if (schema.size() != n_attr)
            throw Error(detail::concat("schema lists ", schema.size(), " attributes, table header has ", n_attr));
        for (std::size_t a = 0; a < n_attr; ++a) {
            if (schema[a].name != attrs[a].name)
                throw Error(detail::concat("header column ", a + 1, " is '", attrs[a].name,
                                           "' but schema expects '", schema[a].name, "'"));
            if (schema[a].kind != attrs[a].kind)
                throw Error(detail::concat("attribute '", attrs[a].name, "' kind disagrees with schema"));
            attrs[a] = schema[a];
        }
    }
    if (std::none_of(attrs.begin(), attrs.end(), [](auto& s) { return s.kind == AttributeKind::condition; }))
        throw Error("table has no condition attribute");

    std::vector<std::string> ids;
    std::vector<Code> cells;
    std::set<std::string> seen;
    std::vector<std::set<Code>> observed(n_attr);
    for (std::size_t r = 2; r < rows.size(); ++r) {
        const auto& row = rows[r];
        auto fail = [&](const auto&... msg) {
            return Error(detail::concat("row ", r - 1, " (line ", row.line, "): ", msg...));
        };
        if (row.fields.size() != n_attr + 1)
            throw fail("malformed row, expected ", n_attr + 1, " cells, got ", row.fields.size());
        const auto& id = row.fields[0];
        if (id.empty())
            throw fail("empty object id");
        if (!seen.insert(id).second)
            throw fail("duplicate object id '", id, "'");
        ids.push_back(id);
        for (std::size_t a = 0; a < n_attr; ++a) {
            const auto& cell = row.fields[a + 1];
            if (detail::is_missing(cell))
                throw fail("missing value for attribute '", attrs[a].name, "'");
            Code c = 0;
            try {
                c = detail::parse_code(cell);
            } catch (const Error& e) {
                throw fail("attribute '", attrs[a].name, "': ", e.what());
            }
            if (!schema.empty() && !attrs[a].admits(c))
                throw fail("code ", c, " not in domain of attribute '", attrs[a].name, "'");
            observed[a].insert(c);
            cells.push_back(c);
        }
    }
    if (schema.empty())
        for (std::size_t a = 0; a < n_attr; ++a)
            attrs[a].domain.assign(observed[a].begin(), observed[a].end());
    return DecisionTable(std::move(ids), std::move(attrs), std::move(cells));
}

inline DecisionTable load_table(const std::string& path, std::span<const AttributeSchema> schema = {}) {
    std::ifstream in(path);
    if (!in)
        throw Error(detail::concat("cannot open table '", path, "'"));
    try {
        return read_table(in, schema);
    } catch (const Error& e) {
        throw Error(detail::concat(path, ": ", e.what()));
    }
}

inline void write_table(std::ostream& out, const DecisionTable& t) {
    out << "id";
    for (auto& a : t.attributes())
        out << ',' << a.name;
    out << "\nkind";
    for (auto& a : t.attributes())
        out << ',' << kind_letter(a.kind);
    out << '\n';
    for (std::size_t o = 0; o < t.object_count(); ++o) {
        out << t.object_id(o);
        for (auto v : t.row(o))
            out << ',' << v;
        out << '\n';
    }
}

inline void save_table(const std::string& path, const DecisionTable& t) {
    std::ofstream out(path);
    if (!out)
        throw Error(detail::concat("cannot write table '", path, "'"));
    write_table(out, t);
}

/// Schema file: one INI section per attribute, in column order.
///
///     [a1]
///     kind = C
///     domain = 1 2 3
///     labels = always seldom never   ; optional, parallel to domain
inline std::vector<AttributeSchema> read_schema(std::istream& in) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw Error(detail::concat("schema: ", e.message(), " (line ", e.line(), ")"));
    }
    std::vector<AttributeSchema> out;
    for (auto& [name, section] : tree) {
        AttributeSchema s;
        s.name = name;
        s.kind = parse_kind(section.get<std::string>("kind", "C"));
        for (auto& tok : detail::tokens(section.get<std::string>("domain", "")))
            s.domain.push_back(detail::parse_code(tok));
        if (s.domain.empty())
            throw Error(detail::concat("schema: attribute '", name, "' has an empty domain"));
        auto labels = detail::tokens(section.get<std::string>("labels", ""));
        if (!labels.empty()) {
            if (labels.size() != s.domain.size())
                throw Error(detail::concat("schema: attribute '", name, "' labels do not match domain size"));
            for (std::size_t i = 0; i < labels.size(); ++i)
                s.labels[s.domain[i]] = labels[i];
        }
        auto sorted = s.domain;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw Error(detail::concat("schema: attribute '", name, "' has duplicate domain codes"));
        s.domain = std::move(sorted);
        out.push_back(std::move(s));
    }
    std::set<std::string> names;
    for (auto& s : out)
        if (!names.insert(s.name).second)
            throw Error(detail::concat("schema: duplicate attribute '", s.name, "'"));
    return out;
}

inline std::vector<AttributeSchema> load_schema(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(detail::concat("cannot open schema '", path, "'"));
    return read_schema(in);
}

/// Same objects, columns restricted to `attrs` (kept in table column order).
inline DecisionTable project(const DecisionTable& t, std::span<const std::size_t> attrs) {
    std::vector<bool> keep(t.attribute_count(), false);
    for (auto a : attrs) {
        if (a >= t.attribute_count())
            throw Error(detail::concat("attribute index ", a, " out of range"));
        keep[a] = true;
    }
    std::vector<AttributeSchema> schema;
    std::vector<std::size_t> cols;
    for (std::size_t a = 0; a < t.attribute_count(); ++a)
        if (keep[a]) {
            schema.push_back(t.attribute(a));
            cols.push_back(a);
        }
    std::vector<Code> cells;
    cells.reserve(t.object_count() * cols.size());
    for (std::size_t o = 0; o < t.object_count(); ++o)
        for (auto a : cols)
            cells.push_back(t.value(o, a));
    return DecisionTable(t.objects(), std::move(schema), std::move(cells));
}

inline DecisionTable project(const DecisionTable& t, std::span<const std::string> names) {
    auto idx = t.attribute_indices(names);
    return project(t, std::span<const std::size_t>(idx));
}

inline DecisionTable project(const DecisionTable& t, std::initializer_list<std::string> names) {
    std::vector<std::string> v(names);
    return project(t, std::span<const std::string>(v));
}

/// Rows in `objects`, in table order.
inline DecisionTable select_objects(const DecisionTable& t, const IndexSet& objects) {
    std::vector<std::string> ids;
    std::vector<Code> cells;
    for (auto o : to_indices(objects)) {
        ids.push_back(t.object_id(o));
        auto r = t.row(o);
        cells.insert(cells.end(), r.begin(), r.end());
    }
    return DecisionTable(std::move(ids), t.attributes(), std::move(cells));
}

struct TrainTestSplit {
    DecisionTable train;
    DecisionTable test;
};

/// Uniform random split without replacement; |train| = round(ratio * |U|).
/// Both halves keep the input row order.
inline TrainTestSplit split_train_test(const DecisionTable& t, double ratio, std::uint64_t seed) {
    if (!(ratio > 0.0 && ratio < 1.0))
        throw Error(detail::concat("split ratio must lie in (0,1), got ", ratio));
    if (t.object_count() == 0)
        throw Error("cannot split an empty table");
    const auto n = t.object_count();
    const auto k = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(n)));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    // Fisher-Yates with an explicit draw so the permutation does not depend
    // on the standard library's distribution implementation.
    for (std::size_t i = n - 1; i > 0; --i) {
        auto j = static_cast<std::size_t>(rng() % (i + 1));
        std::swap(order[i], order[j]);
    }
    IndexSet train(n);
    for (std::size_t i = 0; i < k; ++i)
        train.set(order[i]);
    IndexSet test = ~train;
    return {select_objects(t, train), select_objects(t, test)};
}

} // namespace rsfca

#endif
