#pragma once

#include <optional>

#include "latpol/enumerate.hpp"
#include "latpol/polytope.hpp"

namespace latpol {

// Placing triangulation of a full-dimensional point list: points are inserted
// in the given order; each point beyond the current hull cones over its
// strictly visible facets. Returns index simplices into the input list.
inline std::vector<std::vector<int>> placing_triangulation_indices(const std::vector<IVec>& pts) {
    if (pts.empty()) throw std::invalid_argument("placing_triangulation: no points");
    const std::size_t d = pts[0].size();
    if (detail::hull_fits_int64(d, detail::max_abs_coord(pts))) {
        detail::HullBuilder<std::int64_t> b(pts, true);
        b.build();
        return b.simplices();
    }
    detail::HullBuilder<Int> b(pts, true);
    b.build();
    return b.simplices();
}

// Normalized volume of the simplex spanned by d+1 points: |det| of the edge
// matrix, i.e. d! times the Euclidean volume.
inline Int simplex_normalized_volume(const std::vector<IVec>& pts, const std::vector<int>& simplex) {
    const std::size_t d = pts[0].size();
    IMat m(d, d);
    const IVec& base = pts[static_cast<std::size_t>(simplex.at(0))];
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t j = 0; j < d; ++j)
            m.at(r, j) = pts[static_cast<std::size_t>(simplex.at(r + 1))][j] - base[j];
    return abs_int(determinant(m));
}

// Normalized volume (d! * euclidean) of P via its placing triangulation over
// the stored vertex order; cached on P.
inline const Int& normalized_volume(const LatticePolytope& P) {
    auto& cache = P.cache();
    std::call_once(cache.vol_once, [&] {
        Int vol = 0;
        if (P.dim() == 1) {
            vol = P.vertices().back()[0] - P.vertices().front()[0];
        } else {
            auto tri = placing_triangulation_indices(P.vertices());
            for (const auto& s : tri) vol += simplex_normalized_volume(P.vertices(), s);
        }
        cache.vol = vol;
    });
    return cache.vol;
}

inline std::vector<std::size_t> facet_vertex_indices(const LatticePolytope& P, std::size_t fi) {
    std::vector<std::size_t> out;
    const auto& f = P.facets().at(fi);
    for (std::size_t i = 0; i < P.vertices().size(); ++i)
        if (f.eval(P.vertices()[i]) == 0) out.push_back(i);
    return out;
}

// Affine-lattice coordinates on a facet hyperplane: an integer matrix E with
// y = E (x - base) mapping Aff(F) cap Z^d bijectively onto Z^{d-1}.
struct FacetEmbedding {
    IVec base;
    IMat rows; // (d-1) x d
};

inline FacetEmbedding facet_embedding(const LatticePolytope& P, std::size_t fi) {
    const std::size_t d = P.dim();
    const auto& f = P.facets().at(fi);
    auto idx = facet_vertex_indices(P, fi);
    if (idx.empty()) throw std::logic_error("facet_embedding: facet without vertices");
    // unimodular M = [w | kernel basis] with alpha.w = 1; its inverse rows
    // 1..d-1 are the embedding
    IMat m1(1, d);
    for (std::size_t j = 0; j < d; ++j) m1.at(0, j) = f.alpha[j];
    SnfResult s = smith_normal_form(m1);
    if (s.d.at(0, 0) != 1) throw std::logic_error("facet_embedding: form not primitive");
    // alpha * V = (det(U)^-1, 0, ..., 0) with U 1x1 = (+-1); flip col 0 if needed
    IMat M = s.v;
    IVec av = mat_vec(IMat::from_rows({f.alpha}), M.col(0));
    if (av[0] == -1)
        for (std::size_t i = 0; i < d; ++i) M.at(i, 0) = -M.at(i, 0);
    IMat inv = unimodular_inverse(M);
    FacetEmbedding e;
    e.base = P.vertices()[idx[0]];
    e.rows = IMat(d - 1, d);
    for (std::size_t r = 0; r + 1 < d; ++r)
        for (std::size_t j = 0; j < d; ++j) e.rows.at(r, j) = inv.at(r + 1, j);
    return e;
}

inline IVec embed_point(const FacetEmbedding& e, const IVec& x) {
    return mat_vec(e.rows, sub(x, e.base));
}

// Placing triangulation of facet fi, as tuples of original vertices.
inline std::vector<std::vector<IVec>> placing_triangulation_of_facet(const LatticePolytope& P,
                                                                     std::size_t fi) {
    const std::size_t d = P.dim();
    auto idx = facet_vertex_indices(P, fi);
    if (d == 1) return {{P.vertices()[idx.at(0)]}};
    std::vector<IVec> emb;
    emb.reserve(idx.size());
    FacetEmbedding e = facet_embedding(P, fi);
    for (std::size_t i : idx) emb.push_back(embed_point(e, P.vertices()[i]));
    auto tri = placing_triangulation_indices(emb);
    std::vector<std::vector<IVec>> out;
    out.reserve(tri.size());
    for (const auto& s : tri) {
        std::vector<IVec> simplex;
        simplex.reserve(s.size());
        for (int i : s) simplex.push_back(P.vertices()[idx[static_cast<std::size_t>(i)]]);
        out.push_back(std::move(simplex));
    }
    return out;
}

// Multiplicity of facet fi: normalized (d-1)-volume of F in the lattice
// Aff(F) cap Z^d. Facets of multiplicity 1 are unimodular simplices.
inline const std::vector<Int>& facet_multiplicities(const LatticePolytope& P) {
    auto& cache = P.cache();
    std::call_once(cache.mult_once, [&] {
        std::vector<Int> mults;
        mults.reserve(P.facets().size());
        for (std::size_t fi = 0; fi < P.facets().size(); ++fi) {
            if (P.dim() == 1) {
                mults.push_back(1);
                continue;
            }
            auto idx = facet_vertex_indices(P, fi);
            std::vector<IVec> emb;
            emb.reserve(idx.size());
            FacetEmbedding e = facet_embedding(P, fi);
            for (std::size_t i : idx) emb.push_back(embed_point(e, P.vertices()[i]));
            Int vol = 0;
            if (P.dim() == 2) {
                Int lo = emb[0][0], hi = emb[0][0];
                for (const IVec& y : emb) {
                    lo = std::min(lo, y[0]);
                    hi = std::max(hi, y[0]);
                }
                vol = hi - lo;
            } else {
                auto tri = placing_triangulation_indices(emb);
                for (const auto& s : tri) vol += simplex_normalized_volume(emb, s);
            }
            mults.push_back(vol);
        }
        cache.mults = std::move(mults);
    });
    return cache.mults;
}

inline const Int& facet_multiplicity(const LatticePolytope& P, std::size_t fi) {
    return facet_multiplicities(P).at(fi);
}

} // namespace latpol
