#pragma once

#include <numeric>
#include <string>
#include <utility>

#include "latpol/enumerate.hpp"
#include "latpol/jump.hpp"
#include "latpol/normality.hpp"

namespace latpol {

inline LatticePolytope unit_simplex(std::size_t d) {
    if (d == 0) throw std::invalid_argument("unit_simplex: dimension zero");
    std::vector<IVec> pts{IVec(d, Int(0))};
    for (std::size_t i = 0; i < d; ++i) {
        IVec e(d, Int(0));
        e[i] = 1;
        pts.push_back(std::move(e));
    }
    return convex_hull(std::move(pts));
}

inline LatticePolytope unit_cube(std::size_t d) {
    if (d == 0 || d > 24) throw std::invalid_argument("unit_cube: bad dimension");
    std::vector<IVec> pts;
    for (std::size_t mask = 0; mask < (std::size_t(1) << d); ++mask) {
        IVec p(d);
        for (std::size_t j = 0; j < d; ++j) p[j] = (mask >> j) & 1;
        pts.push_back(std::move(p));
    }
    return convex_hull(std::move(pts));
}

// conv(+-k e1, +-(k+1) e2, +-(k^2+k+1) e3): normal, with an extension of
// height exactly k waiting at cross_polytope_jump_point(k)
inline LatticePolytope cross_polytope(long k) {
    if (k < 1) throw std::invalid_argument("cross_polytope: need k >= 1");
    Int a = k, b = k + 1, c = Int(k) * k + k + 1;
    std::vector<IVec> pts;
    for (int s : {1, -1}) {
        pts.push_back({s * a, 0, 0});
        pts.push_back({0, s * b, 0});
        pts.push_back({0, 0, s * c});
    }
    return convex_hull(std::move(pts));
}

inline IVec cross_polytope_jump_point(long k) {
    if (k < 1) throw std::invalid_argument("cross_polytope_jump_point: need k >= 1");
    return {Int(0), Int(1), Int(k) * k + 1};
}

struct SharpPair {
    LatticePolytope polytope;
    IVec z;
};

// conv(0, e1, ..., e_{d-1}, -w e_d) together with z = (1, ..., 1, (d-2)w + 1):
// the jump sits at the largest height the width bound allows
inline SharpPair sharp_pair(std::size_t d, const Int& w) {
    if (d < 3) throw std::invalid_argument("sharp_pair: need dimension >= 3");
    if (w < 1) throw std::invalid_argument("sharp_pair: need width >= 1");
    std::vector<IVec> pts{IVec(d, Int(0))};
    for (std::size_t i = 0; i + 1 < d; ++i) {
        IVec e(d, Int(0));
        e[i] = 1;
        pts.push_back(std::move(e));
    }
    IVec low(d, Int(0));
    low[d - 1] = -w;
    pts.push_back(std::move(low));
    IVec z(d, Int(1));
    z[d - 1] = Int(d - 2) * w + 1;
    return {convex_hull(std::move(pts)), std::move(z)};
}

// pentagon whose origin vertex no jump can see
inline LatticePolytope dark_vertex_polygon() {
    return convex_hull({{Int(0), Int(0)},
                        {Int(0), Int(1)},
                        {Int(1), Int(0)},
                        {Int(5), Int(1)},
                        {Int(1), Int(5)}});
}

// A vertex is dark when no jump illuminates it, i.e. no jump z puts v on a
// facet visible from z. Polygons only: there every jump sits at lattice
// distance one, so the candidates form a finite, easily scanned set.
inline bool is_dark_vertex(const LatticePolytope& P, const IVec& v) {
    if (P.dim() != 2) throw std::invalid_argument("is_dark_vertex: polygons only");
    if (!sorted_contains(P.vertices(), v))
        throw std::invalid_argument("is_dark_vertex: not a vertex");
    for (const IVec& z : stratum(P, Int(1))) {
        if (!is_jump(P, z).accepted) continue;
        for (std::size_t t : P.visible_facets(z))
            if (P.facets()[t].eval(v) == 0) return false;
    }
    return true;
}

// conv(0, e1, e3, q e1 + p e2 + e3): no lattice points besides the vertices
inline LatticePolytope empty_simplex(long p, long q) {
    if (p < 2 || q < 1 || q > p - 1 || std::gcd(p, q) != 1)
        throw std::invalid_argument("empty_simplex: need coprime 1 <= q <= p-1");
    return convex_hull(
        {{Int(0), Int(0), Int(0)}, {Int(1), Int(0), Int(0)}, {Int(0), Int(0), Int(1)},
         {Int(q), Int(p), Int(1)}});
}

// Normal P and normal Q with L(Q) = L(P) minus two points, where neither
// intermediate one-point hull is normal: inclusion without a jump chain.
inline std::pair<LatticePolytope, LatticePolytope> order_gap_example() {
    LatticePolytope P = convex_hull({{Int(0), Int(0), Int(2)},
                                     {Int(0), Int(0), Int(1)},
                                     {Int(0), Int(1), Int(3)},
                                     {Int(1), Int(0), Int(0)},
                                     {Int(2), Int(1), Int(2)},
                                     {Int(1), Int(2), Int(1)}});
    std::vector<IVec> rest;
    for (const IVec& x : lattice_points(P))
        if (x != IVec{Int(0), Int(0), Int(2)} && x != IVec{Int(0), Int(0), Int(1)})
            rest.push_back(x);
    return {std::move(P), convex_hull(std::move(rest))};
}

// Maximal fixtures: no jump exists over any of these. The P5 coordinates as
// printed in our source table have two entries with dropped separators; the
// values below are the unique readings that reproduce the recorded lattice
// point counts, facet widths and facet multiplicities (see the test suite).
inline LatticePolytope maximal_polytope(const std::string& name) {
    if (name == "P4")
        return convex_hull({{Int(0), Int(0), Int(0), Int(0)},
                            {Int(3), Int(0), Int(2), Int(0)},
                            {Int(-2), Int(-3), Int(3), Int(-1)},
                            {Int(10), Int(3), Int(-3), Int(-1)},
                            {Int(0), Int(-3), Int(1), Int(-2)},
                            {Int(2), Int(-2), Int(0), Int(-2)},
                            {Int(-9), Int(4), Int(10), Int(4)}});
    if (name == "P5")
        return convex_hull({{Int(4), Int(-13), Int(-2), Int(-1), Int(1)},
                            {Int(4), Int(12), Int(13), Int(4), Int(-2)},
                            {Int(-2), Int(0), Int(-8), Int(-2), Int(1)},
                            {Int(0), Int(-2), Int(0), Int(0), Int(0)},
                            {Int(27), Int(-26), Int(-15), Int(-6), Int(3)},
                            {Int(10), Int(-1), Int(-11), Int(-4), Int(1)},
                            {Int(10), Int(-13), Int(-2), Int(-1), Int(1)}});
    if (name == "P4prime")
        return convex_hull({{Int(0), Int(3), Int(2), Int(0)},
                            {Int(1), Int(1), Int(3), Int(2)},
                            {Int(2), Int(3), Int(0), Int(4)},
                            {Int(4), Int(0), Int(0), Int(2)},
                            {Int(4), Int(4), Int(4), Int(2)}});
    throw std::invalid_argument("maximal_polytope: unknown name '" + name + "'");
}

// E = { x : sum_i (l_i(x) - z_i)^2 <= 1 } for independent rational forms l_i
struct EllipsoidSpec {
    std::size_t d = 0;
    std::vector<QVec> forms; // d rows of d rational coefficients
    QVec center;             // (z_1, ..., z_d), in form space

    static EllipsoidSpec ball(std::size_t d, const Rat& r) {
        if (d == 0 || r <= 0) throw std::invalid_argument("ball: bad parameters");
        EllipsoidSpec e;
        e.d = d;
        e.center.assign(d, Rat(0));
        for (std::size_t i = 0; i < d; ++i) {
            QVec row(d, Rat(0));
            row[i] = Rat(1) / r;
            e.forms.push_back(std::move(row));
        }
        return e;
    }

    static EllipsoidSpec axis_aligned(const QVec& semiaxes, const QVec& center) {
        const std::size_t d = semiaxes.size();
        if (d == 0 || center.size() != d)
            throw std::invalid_argument("axis_aligned: bad parameters");
        EllipsoidSpec e;
        e.d = d;
        e.center.assign(d, Rat(0));
        for (std::size_t i = 0; i < d; ++i) {
            if (semiaxes[i] <= 0) throw std::invalid_argument("axis_aligned: bad semiaxis");
            QVec row(d, Rat(0));
            row[i] = Rat(1) / semiaxes[i];
            e.center[i] = center[i] / semiaxes[i];
            e.forms.push_back(std::move(row));
        }
        return e;
    }

    bool contains(const IVec& x) const {
        Rat sum = 0;
        for (std::size_t i = 0; i < d; ++i) {
            Rat li = 0;
            for (std::size_t j = 0; j < d; ++j) li += forms[i][j] * Rat(x[j]);
            Rat diff = li - center[i];
            sum += diff * diff;
        }
        return sum <= 1;
    }
};

namespace detail {

// clear the denominators of each form: row i becomes an integer row a_i with
// l_i = a_i / den_i
inline void integerize_forms(const EllipsoidSpec& e, IMat& a, std::vector<Int>& den) {
    a = IMat(e.d, e.d);
    den.assign(e.d, Int(1));
    for (std::size_t i = 0; i < e.d; ++i) {
        Int common = 1;
        for (std::size_t j = 0; j < e.d; ++j)
            common = common / gcd_int(common, denominator(e.forms[i][j])) *
                     denominator(e.forms[i][j]);
        den[i] = common;
        for (std::size_t j = 0; j < e.d; ++j) {
            Rat scaled = e.forms[i][j] * Rat(common);
            a.at(i, j) = numerator(scaled);
        }
    }
}

} // namespace detail

inline std::vector<IVec> ellipsoid_lattice_points(const EllipsoidSpec& e) {
    if (e.d == 0 || e.forms.size() != e.d || e.center.size() != e.d)
        throw std::invalid_argument("ellipsoid_lattice_points: malformed spec");
    IMat a;
    std::vector<Int> den;
    detail::integerize_forms(e, a, den);
    if (determinant(a) == 0)
        throw std::invalid_argument("ellipsoid_lattice_points: dependent forms");

    // x = A^{-1} w with w_i = den_i * l_i(x) confined to den_i (z_i +- 1)
    auto ainv = rational_inverse(a);
    IBox box;
    box.lo.resize(e.d);
    box.hi.resize(e.d);
    for (std::size_t j = 0; j < e.d; ++j) {
        Rat mid = 0, radius = 0;
        for (std::size_t k = 0; k < e.d; ++k) {
            mid += ainv[j][k] * Rat(den[k]) * e.center[k];
            Rat span = ainv[j][k] * Rat(den[k]);
            radius += span < 0 ? -span : span;
        }
        box.lo[j] = rat_ceil(mid - radius);
        box.hi[j] = rat_floor(mid + radius);
    }

    std::vector<IVec> out;
    IVec x = box.lo;
    if (x.empty()) return out;
    for (std::size_t j = 0; j < e.d; ++j)
        if (box.lo[j] > box.hi[j]) return out;
    for (;;) {
        if (e.contains(x)) out.push_back(x);
        std::size_t j = e.d;
        while (j > 0) {
            --j;
            if (x[j] < box.hi[j]) {
                ++x[j];
                for (std::size_t t = j + 1; t < e.d; ++t) x[t] = box.lo[t];
                break;
            }
            if (j == 0) return out;
        }
    }
}

inline LatticePolytope ellipsoid_hull(const EllipsoidSpec& e) {
    std::vector<IVec> pts = ellipsoid_lattice_points(e);
    if (pts.empty()) throw LowDimensionError(0, e.d);
    return convex_hull(std::move(pts));
}

// every point of L(2P) must split into two points of L(P), where P is the
// hull of the lattice points of E
inline bool two_point_decomposition_check(const EllipsoidSpec& e, const LatticePolytope& P) {
    std::vector<IVec> inside = ellipsoid_lattice_points(e);
    if (inside != lattice_points(P))
        throw std::invalid_argument(
            "two_point_decomposition_check: polytope is not the hull of the ellipsoid");
    return is_normal_bruteforce(P, 2).normal;
}

namespace detail {

inline std::vector<std::string> split_name(const std::string& name) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (pos <= name.size()) {
        std::size_t next = name.find(':', pos);
        if (next == std::string::npos) {
            parts.push_back(name.substr(pos));
            break;
        }
        parts.push_back(name.substr(pos, next - pos));
        pos = next + 1;
    }
    return parts;
}

inline long name_arg(const std::vector<std::string>& parts, std::size_t i,
                     const std::string& name) {
    if (i >= parts.size())
        throw std::invalid_argument("gallery name '" + name + "': missing argument");
    try {
        std::size_t used = 0;
        long val = std::stol(parts[i], &used);
        if (used != parts[i].size()) throw std::invalid_argument("");
        return val;
    } catch (const std::exception&) {
        throw std::invalid_argument("gallery name '" + name + "': bad integer '" + parts[i] +
                                    "'");
    }
}

} // namespace detail

// names: P4, P5, P4prime, cube:d, simplex:d, cross:k, sharp:d:w, delta:p:q,
// pentagon, ordergap:P, ordergap:Q, ball:d:r
inline LatticePolytope gallery_polytope(const std::string& name) {
    auto parts = detail::split_name(name);
    const std::string& head = parts[0];
    auto arity = [&](std::size_t n) {
        if (parts.size() != n + 1)
            throw std::invalid_argument("gallery name '" + name + "': wrong argument count");
    };
    if (head == "P4" || head == "P5" || head == "P4prime") {
        arity(0);
        return maximal_polytope(head);
    }
    if (head == "cube") {
        arity(1);
        long d = detail::name_arg(parts, 1, name);
        if (d < 1) throw std::invalid_argument("gallery cube: bad dimension");
        return unit_cube(static_cast<std::size_t>(d));
    }
    if (head == "simplex") {
        arity(1);
        long d = detail::name_arg(parts, 1, name);
        if (d < 1) throw std::invalid_argument("gallery simplex: bad dimension");
        return unit_simplex(static_cast<std::size_t>(d));
    }
    if (head == "cross") {
        arity(1);
        return cross_polytope(detail::name_arg(parts, 1, name));
    }
    if (head == "sharp") {
        arity(2);
        long d = detail::name_arg(parts, 1, name);
        long w = detail::name_arg(parts, 2, name);
        if (d < 3) throw std::invalid_argument("gallery sharp: bad dimension");
        return sharp_pair(static_cast<std::size_t>(d), Int(w)).polytope;
    }
    if (head == "delta") {
        arity(2);
        return empty_simplex(detail::name_arg(parts, 1, name),
                             detail::name_arg(parts, 2, name));
    }
    if (head == "pentagon") {
        arity(0);
        return dark_vertex_polygon();
    }
    if (head == "ordergap") {
        arity(1);
        if (parts[1] == "P") return order_gap_example().first;
        if (parts[1] == "Q") return order_gap_example().second;
        throw std::invalid_argument("gallery ordergap: expected P or Q");
    }
    if (head == "ball") {
        arity(2);
        long d = detail::name_arg(parts, 1, name);
        long r = detail::name_arg(parts, 2, name);
        if (d < 1 || r < 1) throw std::invalid_argument("gallery ball: bad parameters");
        return ellipsoid_hull(EllipsoidSpec::ball(static_cast<std::size_t>(d), Rat(r)));
    }
    throw std::invalid_argument(
        "unknown gallery name '" + name +
        "' (try P4, P5, P4prime, cube:d, simplex:d, cross:k, sharp:d:w, delta:p:q, "
        "pentagon, ordergap:P, ordergap:Q, ball:d:r)");
}

} // namespace latpol
