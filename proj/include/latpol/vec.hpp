#pragma once

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "latpol/integer.hpp"

namespace latpol {

// A lattice point / integer vector in Z^d.
using IVec = std::vector<Int>;
// A rational point, kept in lowest terms by cpp_rational itself.
using QVec = std::vector<Rat>;

inline Int dot(const IVec& a, const IVec& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline IVec add(const IVec& a, const IVec& b) {
    IVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline IVec sub(const IVec& a, const IVec& b) {
    IVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline IVec scale(const Int& k, const IVec& a) {
    IVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = k * a[i];
    return r;
}

inline IVec negate(const IVec& a) {
    IVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline bool is_zero(const IVec& a) {
    for (const Int& x : a)
        if (x != 0) return false;
    return true;
}

inline bool lex_less(const IVec& a, const IVec& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline Int content(const IVec& v) {
    Int g = 0;
    for (const Int& x : v) g = gcd_int(g, x);
    return g;
}

// Divide out the (positive) gcd of the entries. The first nonzero entry keeps
// its sign: (0,-5,10) -> (0,-1,2).
inline IVec primitive(const IVec& v) {
    Int g = content(v);
    if (g == 0) throw std::invalid_argument("primitive: zero vector");
    IVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
    return r;
}

inline std::string vec_to_string(const IVec& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << v[i];
    }
    os << ")";
    return os.str();
}

inline void sort_unique(std::vector<IVec>& pts) {
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

inline bool sorted_contains(const std::vector<IVec>& sorted, const IVec& x) {
    return std::binary_search(sorted.begin(), sorted.end(), x, lex_less);
}

} // namespace latpol
