#ifndef RSFCA_CONTEXT_HPP
#define RSFCA_CONTEXT_HPP

#include "rules.hpp"

namespace rsfca {

/// Objects x attributes incidence relation with both derivation operators.
class FormalContext {
  public:
    FormalContext() = default;

    FormalContext(std::vector<std::string> objects, std::vector<std::string> attributes, std::vector<IndexSet> rows)
        : objects_(std::move(objects)), attributes_(std::move(attributes)), rows_(std::move(rows)),
          columns_(attributes_.size(), IndexSet(objects_.size())) {
        if (rows_.size() != objects_.size())
            throw Error("context needs one incidence row per object");
        for (std::size_t g = 0; g < objects_.size(); ++g) {
            if (rows_[g].size() != attributes_.size())
                throw Error(detail::concat("incidence row of '", objects_[g], "' has wrong width"));
            if (!object_index_.emplace(objects_[g], g).second)
                throw Error(detail::concat("duplicate object '", objects_[g], "'"));
            for (auto m = rows_[g].find_first(); m != IndexSet::npos; m = rows_[g].find_next(m))
                columns_[m].set(g);
        }
        for (std::size_t m = 0; m < attributes_.size(); ++m)
            if (!attribute_index_.emplace(attributes_[m], m).second)
                throw Error(detail::concat("duplicate attribute '", attributes_[m], "'"));
    }

    std::size_t object_count() const { return objects_.size(); }
    std::size_t attribute_count() const { return attributes_.size(); }
    const std::vector<std::string>& objects() const { return objects_; }
    const std::vector<std::string>& attributes() const { return attributes_; }

    /// Attributes of object g (its row).
    const IndexSet& row(std::size_t g) const { return rows_.at(g); }
    /// Objects having attribute m (its column).
    const IndexSet& column(std::size_t m) const { return columns_.at(m); }
    bool incident(std::size_t g, std::size_t m) const { return rows_.at(g).test(m); }

    IndexSet no_objects() const { return IndexSet(objects_.size()); }
    IndexSet no_attributes() const { return IndexSet(attributes_.size()); }
    IndexSet all_objects() const { return ~no_objects(); }
    IndexSet all_attributes() const { return ~no_attributes(); }

    /// X' : attributes shared by every object in X.
    IndexSet derive_attributes(const IndexSet& X) const {
        if (X.size() != objects_.size())
            throw Error("object set does not belong to this context");
        IndexSet out = all_attributes();
        for (auto g = X.find_first(); g != IndexSet::npos; g = X.find_next(g))
            out &= rows_[g];
        return out;
    }

    /// Y' : objects having every attribute in Y.
    IndexSet derive_objects(const IndexSet& Y) const {
        if (Y.size() != attributes_.size())
            throw Error("attribute set does not belong to this context");
        IndexSet out = all_objects();
        for (auto m = Y.find_first(); m != IndexSet::npos; m = Y.find_next(m))
            out &= columns_[m];
        return out;
    }

    IndexSet closure(const IndexSet& Y) const { return derive_attributes(derive_objects(Y)); }
    IndexSet object_closure(const IndexSet& X) const { return derive_objects(derive_attributes(X)); }

    std::size_t object_index(std::string_view name) const {
        auto it = object_index_.find(std::string(name));
        if (it == object_index_.end())
            throw Error(detail::concat("unknown object '", name, "'"));
        return it->second;
    }

    std::size_t attribute_index(std::string_view name) const {
        auto it = attribute_index_.find(std::string(name));
        if (it == attribute_index_.end())
            throw Error(detail::concat("unknown attribute '", name, "'"));
        return it->second;
    }

    IndexSet object_set(std::initializer_list<std::string_view> names) const {
        IndexSet s = no_objects();
        for (auto n : names)
            s.set(object_index(n));
        return s;
    }

    IndexSet attribute_set(std::initializer_list<std::string_view> names) const {
        IndexSet s = no_attributes();
        for (auto n : names)
            s.set(attribute_index(n));
        return s;
    }

    std::string attribute_names(const IndexSet& Y, std::string_view sep = " ") const {
        std::string out;
        for (auto m : to_indices(Y))
            out += (out.empty() ? "" : std::string(sep)) + attributes_[m];
        return out;
    }

    std::string object_names(const IndexSet& X, std::string_view sep = " ") const {
        std::string out;
        for (auto g : to_indices(X))
            out += (out.empty() ? "" : std::string(sep)) + objects_[g];
        return out;
    }

    bool operator==(const FormalContext& o) const {
        return objects_ == o.objects_ && attributes_ == o.attributes_ && rows_ == o.rows_;
    }

  private:
    std::vector<std::string> objects_;
    std::vector<std::string> attributes_;
    std::vector<IndexSet> rows_;
    std::vector<IndexSet> columns_;
    std::unordered_map<std::string, std::size_t> object_index_;
    std::unordered_map<std::string, std::size_t> attribute_index_;
};

/// Cross table of a class's rules: one object per rule, one attribute per
/// distinct premise descriptor. Columns are ordered by attribute (position
/// in `attribute_order` when given, natural name order otherwise), then by
/// code. The shared decision descriptor is left out.
inline FormalContext rules_to_context(const std::vector<DecisionRule>& rules,
                                      std::span<const std::string> attribute_order = {}) {
    if (rules.empty())
        throw Error("cannot build a context from zero rules");
    for (auto& r : rules)
        if (r.conclusion != rules.front().conclusion)
            throw Error(detail::concat("rules mix decision classes: ", to_string(rules.front().conclusion), " and ",
                                       to_string(r.conclusion)));
    auto rank = [&](const std::string& attr) -> std::size_t {
        auto it = std::find(attribute_order.begin(), attribute_order.end(), attr);
        if (it == attribute_order.end())
            throw Error(detail::concat("attribute '", attr, "' missing from attribute order"));
        return static_cast<std::size_t>(it - attribute_order.begin());
    };
    auto less = [&](const Descriptor& a, const Descriptor& b) {
        if (a.attribute != b.attribute) {
            if (!attribute_order.empty())
                return rank(a.attribute) < rank(b.attribute);
            return detail::natural_less(a.attribute, b.attribute);
        }
        return a.value < b.value;
    };
    std::vector<Descriptor> columns;
    std::set<std::vector<Descriptor>> premises;
    for (auto& r : rules) {
        auto p = r.premise;
        std::sort(p.begin(), p.end());
        if (!premises.insert(p).second)
            throw Error(detail::concat("rule '", r.id, "' repeats an earlier premise"));
        for (auto& d : r.premise)
            if (std::find(columns.begin(), columns.end(), d) == columns.end())
                columns.push_back(d);
    }
    std::sort(columns.begin(), columns.end(), less);
    std::vector<std::string> objects, attributes;
    for (auto& d : columns)
        attributes.push_back(to_string(d));
    std::vector<IndexSet> rows;
    for (auto& r : rules) {
        objects.push_back(r.id);
        IndexSet row(columns.size());
        for (auto& d : r.premise)
            row.set(static_cast<std::size_t>(std::find(columns.begin(), columns.end(), d) - columns.begin()));
        rows.push_back(std::move(row));
    }
    return FormalContext(std::move(objects), std::move(attributes), std::move(rows));
}

// Burmeister CXT:
//
//   B
//   <context name, may be empty>
//   <object count>
//   <attribute count>
//   <blank>
//   object names, one per line
//   attribute names, one per line
//   one row per object, 'X' for incidence and '.' otherwise

inline void write_cxt(std::ostream& out, const FormalContext& ctx) {
    out << "B\n\n" << ctx.object_count() << '\n' << ctx.attribute_count() << "\n\n";
    for (auto& g : ctx.objects())
        out << g << '\n';
    for (auto& m : ctx.attributes())
        out << m << '\n';
    for (std::size_t g = 0; g < ctx.object_count(); ++g) {
        for (std::size_t m = 0; m < ctx.attribute_count(); ++m)
            out << (ctx.incident(g, m) ? 'X' : '.');
        out << '\n';
    }
}

inline FormalContext read_cxt(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        lines.push_back(line);
    }
    std::size_t i = 0;
    auto fail = [&](const auto&... msg) { return Error(detail::concat("cxt line ", i + 1, ": ", msg...)); };
    if (lines.empty() || detail::trim(lines[0]) != "B")
        throw Error("cxt: first line must be 'B'");
    i = 1;
    // Optional name line, then the two counts.
    std::vector<std::size_t> counts;
    while (i < lines.size() && counts.size() < 2) {
        auto t = detail::trim(lines[i]);
        bool numeric = !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
        if (numeric)
            counts.push_back(std::stoul(std::string(t)));
        else if (!counts.empty())
            throw fail("expected attribute count");
        else if (i > 2)
            throw fail("expected object count");
        ++i;
    }
    if (counts.size() != 2)
        throw Error("cxt: missing object/attribute counts");
    while (i < lines.size() && detail::trim(lines[i]).empty())
        ++i;
    auto take = [&](std::size_t n) {
        std::vector<std::string> out;
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (i >= lines.size())
                throw Error("cxt: unexpected end of file");
            out.emplace_back(detail::trim(lines[i]));
        }
        return out;
    };
    auto objects = take(counts[0]);
    auto attributes = take(counts[1]);
    std::vector<IndexSet> rows;
    for (std::size_t g = 0; g < counts[0]; ++g, ++i) {
        if (i >= lines.size())
            throw Error("cxt: unexpected end of file");
        auto t = detail::trim(lines[i]);
        if (t.size() != counts[1])
            throw fail("row has ", t.size(), " cells, expected ", counts[1]);
        IndexSet row(counts[1]);
        for (std::size_t m = 0; m < t.size(); ++m) {
            if (t[m] == 'X' || t[m] == 'x')
                row.set(m);
            else if (t[m] != '.')
                throw fail("unexpected cell '", t[m], "'");
        }
        rows.push_back(std::move(row));
    }
    return FormalContext(std::move(objects), std::move(attributes), std::move(rows));
}

inline FormalContext load_cxt(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(detail::concat("cannot open context '", path, "'"));
    try {
        return read_cxt(in);
    } catch (const Error& e) {
        throw Error(detail::concat(path, ": ", e.what()));
    }
}

inline void save_cxt(const std::string& path, const FormalContext& ctx) {
    std::ofstream out(path);
    if (!out)
        throw Error(detail::concat("cannot write context '", path, "'"));
    write_cxt(out, ctx);
}

} // namespace rsfca

#endif
