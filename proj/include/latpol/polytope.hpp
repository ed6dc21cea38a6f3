#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "latpol/matrix.hpp"
#include "latpol/vec.hpp"

namespace latpol {

// Affine form alpha.x + beta, normalized primitive (gcd of all entries and the
// constant is 1) and oriented inward: eval >= 0 on the polytope, == 0 on the
// facet. For a lattice height function the alpha alone is primitive; both
// normalizations coincide for facets of full-dimensional lattice polytopes
// because alpha is primitive and beta is determined by it.
struct FacetForm {
    IVec alpha;
    Int beta;

    Int eval(const IVec& x) const { return dot(alpha, x) + beta; }
    // Value on the dilation k*P of the defining polytope.
    Int eval_dilated(const IVec& x, const Int& k) const { return dot(alpha, x) + k * beta; }

    bool operator==(const FacetForm& o) const { return alpha == o.alpha && beta == o.beta; }
};

inline bool facet_lex_less(const FacetForm& a, const FacetForm& b) {
    if (a.alpha != b.alpha) return lex_less(a.alpha, b.alpha);
    return a.beta < b.beta;
}

// Raised when hull input does not span R^d; carries the achieved affine rank.
class LowDimensionError : public std::domain_error {
  public:
    LowDimensionError(std::size_t rank, std::size_t dim)
        : std::domain_error("input spans an affine subspace of rank " + std::to_string(rank) +
                            " inside R^" + std::to_string(dim)),
          affine_rank(rank),
          ambient_dim(dim) {}
    std::size_t affine_rank;
    std::size_t ambient_dim;
};

class LatticePolytope;
LatticePolytope convex_hull(std::vector<IVec> points);

namespace detail {

template <typename T>
T to_scalar(const Int& v);
template <>
inline Int to_scalar<Int>(const Int& v) { return v; }
template <>
inline std::int64_t to_scalar<std::int64_t>(const Int& v) { return to_int64(v); }

inline Int to_Int(const Int& v) { return v; }
inline Int to_Int(std::int64_t v) { return Int(v); }

// Incremental beneath-beyond hull over exact scalars T. Facets are kept
// simplicial during construction; coplanar ones merge at extraction time.
// Orientation comes from a fixed interior reference point, the centroid of the
// starting simplex, which every later facet hyperplane strictly avoids.
template <typename T>
class HullBuilder {
  public:
    HullBuilder(const std::vector<IVec>& input, bool record_simplices)
        : record_(record_simplices) {
        d_ = input.empty() ? 0 : input[0].size();
        pts_.reserve(input.size());
        for (const IVec& p : input) {
            std::vector<T> q(d_);
            for (std::size_t j = 0; j < d_; ++j) q[j] = to_scalar<T>(p[j]);
            pts_.push_back(std::move(q));
        }
    }

    void build() {
        pick_initial_simplex();
        for (std::size_t i = 0; i < pts_.size(); ++i) {
            if (in_simplex_[i]) continue;
            insert(i);
        }
    }

    // Final primitive facet forms, deduplicated, unsorted.
    std::vector<FacetForm> facet_forms() const {
        std::vector<FacetForm> out;
        for (const auto& f : facets_) {
            if (!f.alive) continue;
            FacetForm ff;
            ff.alpha.resize(d_);
            for (std::size_t j = 0; j < d_; ++j) ff.alpha[j] = to_Int(f.alpha[j]);
            ff.beta = to_Int(f.beta);
            out.push_back(std::move(ff));
        }
        std::sort(out.begin(), out.end(), facet_lex_less);
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    // Index simplices of the placing triangulation (input order), full dim.
    const std::vector<std::vector<int>>& simplices() const { return simplices_; }

    std::size_t dim() const { return d_; }

  private:
    struct BFacet {
        std::vector<int> verts; // sorted point indices, size d
        std::vector<T> alpha;
        T beta;
        bool alive = true;
    };

    std::size_t d_ = 0;
    bool record_;
    std::vector<std::vector<T>> pts_;
    std::vector<bool> in_simplex_;
    std::vector<BFacet> facets_;
    std::vector<int> ref_;          // simplex vertex indices, size d+1
    std::vector<T> ref_sum_;        // coordinate sum of those vertices
    std::vector<std::vector<int>> simplices_;

    T eval_scaled_ref(const std::vector<T>& alpha, const T& beta) const {
        // sign of alpha.(ref_sum/(d+1)) + beta, scaled by d+1
        T s = beta * T(static_cast<std::int64_t>(d_ + 1));
        for (std::size_t j = 0; j < d_; ++j) s += alpha[j] * ref_sum_[j];
        return s;
    }

    void pick_initial_simplex() {
        in_simplex_.assign(pts_.size(), false);
        std::vector<int> chosen{0};
        std::vector<IVec> edges;
        for (std::size_t i = 1; i < pts_.size() && chosen.size() <= d_; ++i) {
            IVec e(d_);
            for (std::size_t j = 0; j < d_; ++j)
                e[j] = to_Int(pts_[i][j]) - to_Int(pts_[chosen[0]][j]);
            edges.push_back(e);
            if (rank_of_rows(edges) == edges.size()) {
                chosen.push_back(static_cast<int>(i));
            } else {
                edges.pop_back();
            }
        }
        if (chosen.size() != d_ + 1) throw LowDimensionError(edges.size(), d_);
        ref_ = chosen;
        ref_sum_.assign(d_, T(0));
        for (int i : chosen) {
            in_simplex_[static_cast<std::size_t>(i)] = true;
            for (std::size_t j = 0; j < d_; ++j) ref_sum_[j] += pts_[static_cast<std::size_t>(i)][j];
        }
        for (std::size_t skip = 0; skip <= d_; ++skip) {
            std::vector<int> fverts;
            for (std::size_t i = 0; i <= d_; ++i)
                if (i != skip) fverts.push_back(chosen[i]);
            add_facet(std::move(fverts));
        }
        if (record_) {
            std::vector<int> s(chosen);
            std::sort(s.begin(), s.end());
            simplices_.push_back(std::move(s));
        }
    }

    // Hyperplane normal through d points via cofactors of the edge matrix.
    void add_facet(std::vector<int> verts) {
        std::sort(verts.begin(), verts.end());
        const std::vector<T>& base = pts_[static_cast<std::size_t>(verts[0])];
        std::vector<T> rows((d_ - 1) * d_);
        for (std::size_t r = 0; r + 1 < d_; ++r)
            for (std::size_t j = 0; j < d_; ++j)
                rows[r * d_ + j] = pts_[static_cast<std::size_t>(verts[r + 1])][j] - base[j];
        std::vector<T> alpha(d_);
        std::vector<T> minor((d_ - 1) * (d_ - 1));
        for (std::size_t k = 0; k < d_; ++k) {
            for (std::size_t r = 0; r + 1 < d_; ++r) {
                std::size_t cc = 0;
                for (std::size_t j = 0; j < d_; ++j) {
                    if (j == k) continue;
                    minor[r * (d_ - 1) + cc] = rows[r * d_ + j];
                    ++cc;
                }
            }
            T det = determinant_t<T>(minor, d_ - 1);
            alpha[k] = (k % 2 == 0) ? det : T(-det);
        }
        T beta(0);
        for (std::size_t j = 0; j < d_; ++j) beta -= alpha[j] * base[j];
        T s = eval_scaled_ref(alpha, beta);
        if (s == 0) throw std::logic_error("hull: reference point on a facet hyperplane");
        if (s < 0) {
            for (auto& a : alpha) a = -a;
            beta = -beta;
        }
        // reduce to primitive
        Int g = 0;
        for (const T& a : alpha) g = gcd_int(g, to_Int(a));
        g = gcd_int(g, to_Int(beta));
        if (g > 1) {
            T gt = to_scalar<T>(g);
            for (auto& a : alpha) a /= gt;
            beta /= gt;
        }
        facets_.push_back(BFacet{std::move(verts), std::move(alpha), beta, true});
    }

    void insert(std::size_t p) {
        std::vector<std::size_t> visible;
        for (std::size_t f = 0; f < facets_.size(); ++f) {
            if (!facets_[f].alive) continue;
            T v = facets_[f].beta;
            for (std::size_t j = 0; j < d_; ++j) v += facets_[f].alpha[j] * pts_[p][j];
            if (v < 0) visible.push_back(f);
        }
        if (visible.empty()) return; // inside or on the boundary of the current hull

        if (record_) {
            for (std::size_t f : visible) {
                std::vector<int> s(facets_[f].verts);
                s.push_back(static_cast<int>(p));
                std::sort(s.begin(), s.end());
                simplices_.push_back(std::move(s));
            }
        }

        // horizon ridges appear in exactly one visible facet
        std::map<std::vector<int>, int> ridge_count;
        for (std::size_t f : visible) {
            const auto& vts = facets_[f].verts;
            for (std::size_t skip = 0; skip < vts.size(); ++skip) {
                std::vector<int> ridge;
                ridge.reserve(d_ - 1);
                for (std::size_t i = 0; i < vts.size(); ++i)
                    if (i != skip) ridge.push_back(vts[i]);
                ++ridge_count[std::move(ridge)];
            }
        }
        for (std::size_t f : visible) facets_[f].alive = false;
        for (auto& [ridge, cnt] : ridge_count) {
            if (cnt != 1) continue;
            std::vector<int> verts(ridge);
            verts.push_back(static_cast<int>(p));
            add_facet(std::move(verts));
        }
        // compact dead facets occasionally to keep scans linear in live count
        if (facets_.size() > 64 && facets_.size() > 3 * live_count()) {
            std::vector<BFacet> keep;
            keep.reserve(facets_.size() / 2);
            for (auto& f : facets_)
                if (f.alive) keep.push_back(std::move(f));
            facets_ = std::move(keep);
        }
    }

    std::size_t live_count() const {
        std::size_t n = 0;
        for (const auto& f : facets_)
            if (f.alive) ++n;
        return n;
    }
};

// Worst-case bound on any intermediate of the hull computation over points
// with coordinates bounded by b: cofactor determinants, betas and evaluations.
inline bool hull_fits_int64(std::size_t d, const Int& b) {
    Int bound = Int(d + 1) * 2;
    Int fact = 1;
    for (std::size_t i = 2; i <= d; ++i) fact *= i;
    bound *= fact;
    Int p = 1;
    for (std::size_t i = 0; i < d; ++i) p *= 2 * b + 1;
    bound *= p;
    return bound < (Int(1) << 61);
}

inline Int max_abs_coord(const std::vector<IVec>& pts) {
    Int b = 0;
    for (const IVec& p : pts)
        for (const Int& x : p) b = std::max(b, abs_int(x));
    return b;
}

} // namespace detail

// Full-dimensional lattice polytope in canonical form: vertices sorted
// lexicographically, facet forms primitive and sorted lexicographically.
// Immutable after construction; derived data (lattice points, volume, facet
// multiplicities) is cached once-only and shared across copies.
class LatticePolytope {
  public:
    struct Cache {
        std::once_flag pts_once, vol_once, mult_once;
        std::vector<IVec> pts;
        Int vol = 0;
        std::vector<Int> mults;
    };

    LatticePolytope() = default;

    std::size_t dim() const { return dim_; }
    const std::vector<IVec>& vertices() const { return vertices_; }
    const std::vector<FacetForm>& facets() const { return facets_; }
    const std::vector<Int>& facet_widths() const { return widths_; }
    const Int& width() const { return width_; }

    // width of P in the direction of facet i: max of the form over P
    const Int& facet_width(std::size_t i) const { return widths_[i]; }

    bool contains(const IVec& x) const {
        for (const auto& f : facets_)
            if (f.eval(x) < 0) return false;
        return true;
    }

    bool contains_dilated(const IVec& x, const Int& k) const {
        for (const auto& f : facets_)
            if (f.eval_dilated(x, k) < 0) return false;
        return true;
    }

    // lattice height of z over P: 0 inside, otherwise max over visible facets
    // of -ht_F(z)
    Int height_over(const IVec& z) const {
        Int h = 0;
        for (const auto& f : facets_) {
            Int v = f.eval(z);
            if (v < 0 && -v > h) h = -v;
        }
        return h;
    }

    std::vector<std::size_t> visible_facets(const IVec& z) const {
        std::vector<std::size_t> vis;
        for (std::size_t i = 0; i < facets_.size(); ++i)
            if (facets_[i].eval(z) < 0) vis.push_back(i);
        return vis;
    }

    bool operator==(const LatticePolytope& o) const {
        return dim_ == o.dim_ && vertices_ == o.vertices_;
    }

    Cache& cache() const { return *cache_; } // internal: used by the free-function layer

  private:
    std::size_t dim_ = 0;
    std::vector<IVec> vertices_;
    std::vector<FacetForm> facets_;
    std::vector<Int> widths_;
    Int width_ = 0;
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();

    friend LatticePolytope convex_hull(std::vector<IVec> points);
};

// Exact convex hull of integer points spanning R^d. Incremental insertion with
// exact arithmetic; int64 fast path when an a-priori bound proves no overflow.
inline LatticePolytope convex_hull(std::vector<IVec> points) {
    if (points.empty()) throw std::invalid_argument("convex_hull: no points");
    const std::size_t d = points[0].size();
    if (d == 0) throw std::invalid_argument("convex_hull: dimension zero");
    for (const IVec& p : points)
        if (p.size() != d) throw std::invalid_argument("convex_hull: mixed dimensions");
    sort_unique(points);

    LatticePolytope P;
    P.dim_ = d;

    if (d == 1) {
        if (points.size() < 2) throw LowDimensionError(0, 1);
        const Int lo = points.front()[0], hi = points.back()[0];
        P.vertices_ = {{lo}, {hi}};
        P.facets_ = {FacetForm{{Int(-1)}, hi}, FacetForm{{Int(1)}, -lo}};
        std::sort(P.facets_.begin(), P.facets_.end(), facet_lex_less);
    } else {
        std::vector<FacetForm> forms;
        if (detail::hull_fits_int64(d, detail::max_abs_coord(points))) {
            detail::HullBuilder<std::int64_t> b(points, false);
            b.build();
            forms = b.facet_forms();
        } else {
            detail::HullBuilder<Int> b(points, false);
            b.build();
            forms = b.facet_forms();
        }
        P.facets_ = std::move(forms);

        // vertices: points whose tight facet normals span R^d
        for (const IVec& p : points) {
            std::vector<IVec> tight;
            bool outside = false;
            for (const auto& f : P.facets_) {
                Int v = f.eval(p);
                if (v < 0) { outside = true; break; }
                if (v == 0) tight.push_back(f.alpha);
            }
            if (outside) throw std::logic_error("convex_hull: point outside constructed hull");
            if (tight.size() >= d && rank_of_rows(tight) == d) P.vertices_.push_back(p);
        }
    }

    // facet widths; every facet of a full-dimensional lattice polytope has
    // positive width
    P.widths_.reserve(P.facets_.size());
    for (const auto& f : P.facets_) {
        Int w = 0;
        for (const IVec& v : P.vertices_) w = std::max(w, f.eval(v));
        P.widths_.push_back(w);
        P.width_ = std::max(P.width_, w);
    }
    return P;
}

// Hull of the vertex set plus one extra point; the common single-point
// extension constructor.
inline LatticePolytope extend_by_point(const LatticePolytope& P, const IVec& z) {
    std::vector<IVec> pts = P.vertices();
    pts.push_back(z);
    return convex_hull(std::move(pts));
}

// Translate by an integer vector: vertices shift, forms keep alpha with beta
// adjusted so that heights are preserved: ht_{P+t}(x+t) = ht_P(x).
inline LatticePolytope translate(const LatticePolytope& P, const IVec& t) {
    std::vector<IVec> pts;
    pts.reserve(P.vertices().size());
    for (const IVec& v : P.vertices()) pts.push_back(add(v, t));
    return convex_hull(std::move(pts));
}

} // namespace latpol
