#ifndef RSFCA_COMMON_HPP
#define RSFCA_COMMON_HPP

#include <boost/dynamic_bitset.hpp>
#include <boost/rational.hpp>

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rsfca {

using Code = std::int32_t;
using Rational = boost::rational<std::int64_t>;

/// Set of row (object) or column (attribute) positions.
using IndexSet = boost::dynamic_bitset<>;

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

namespace detail {

template <typename... Args> std::string concat(const Args&... args) {
    std::ostringstream s;
    (s << ... << args);
    return s.str();
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        auto pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(s.substr(start));
            return out;
        }
        out.emplace_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

/// Whitespace/comma separated tokens, empties dropped.
inline std::vector<std::string> tokens(std::string_view s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
            if (!cur.empty())
                out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty())
        out.push_back(std::move(cur));
    return out;
}

inline Code parse_code(std::string_view text) {
    auto t = trim(text);
    if (t.empty())
        throw Error("empty value");
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(std::string(t), &used);
    } catch (const std::exception&) {
        throw Error(concat("not an integer code: '", t, "'"));
    }
    if (used != t.size() || v < 0 || v > INT32_MAX)
        throw Error(concat("not a non-negative integer code: '", t, "'"));
    return static_cast<Code>(v);
}

/// "a2" < "a10": digit runs compare numerically.
inline bool natural_less(std::string_view a, std::string_view b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        bool da = std::isdigit(static_cast<unsigned char>(a[i]));
        bool db = std::isdigit(static_cast<unsigned char>(b[j]));
        if (da && db) {
            std::size_t ie = i, je = j;
            while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie])))
                ++ie;
            while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je])))
                ++je;
            auto na = a.substr(i, ie - i), nb = b.substr(j, je - j);
            while (na.size() > 1 && na.front() == '0')
                na.remove_prefix(1);
            while (nb.size() > 1 && nb.front() == '0')
                nb.remove_prefix(1);
            if (na.size() != nb.size())
                return na.size() < nb.size();
            if (na != nb)
                return na < nb;
            i = ie;
            j = je;
        } else {
            if (a[i] != b[j])
                return a[i] < b[j];
            ++i;
            ++j;
        }
    }
    return (a.size() - i) < (b.size() - j);
}

} // namespace detail

inline std::vector<std::size_t> to_indices(const IndexSet& s) {
    std::vector<std::size_t> out;
    out.reserve(s.count());
    for (auto i = s.find_first(); i != IndexSet::npos; i = s.find_next(i))
        out.push_back(i);
    return out;
}

inline IndexSet make_index_set(std::size_t size, std::initializer_list<std::size_t> members) {
    IndexSet s(size);
    for (auto m : members)
        s.set(m);
    return s;
}

/// Integer percentage rounded toward zero (8/9 -> 88).
inline std::int64_t floor_percent(const Rational& r) {
    return (r.numerator() * 100) / r.denominator();
}

inline std::string to_string(const Rational& r) {
    std::ostringstream s;
    s << r.numerator();
    if (r.denominator() != 1)
        s << '/' << r.denominator();
    return s.str();
}

inline Rational parse_rational(std::string_view text) {
    auto t = std::string(detail::trim(text));
    try {
        auto slash = t.find('/');
        std::size_t used = 0;
        if (slash == std::string::npos) {
            auto n = std::stoll(t, &used);
            if (used != t.size())
                throw Error("trailing characters");
            return Rational(n);
        }
        auto num = t.substr(0, slash), den = t.substr(slash + 1);
        auto n = std::stoll(num, &used);
        if (used != num.size())
            throw Error("trailing characters");
        auto d = std::stoll(den, &used);
        if (used != den.size() || d == 0)
            throw Error("bad denominator");
        return Rational(n, d);
    } catch (const std::exception&) {
        throw Error(detail::concat("not a rational: '", t, "'"));
    }
}

} // namespace rsfca

#endif
