#pragma once

#include <map>

#include "latpol/matrix.hpp"
#include "latpol/polytope.hpp"

namespace latpol {

// A simplicial cone given by n linearly independent generators (columns),
// together with the lattice points of the semi-open parallelotope
// par(g_1..g_n) = { sum lambda_i g_i : 0 <= lambda_i < 1 }.
struct SimplicialConeData {
    IMat gen;               // n x n, columns are the generators
    Int index;              // |det gen| = number of parallelotope points
    std::vector<IVec> lpar; // lex sorted, always contains the origin
};

// Enumerate par(gen) cap Z^n via the Smith normal form U gen V = D: the group
// Z^n / gen Z^n is represented by U^-1 r for r in prod [0, d_i), and each
// representative is reduced into the parallelotope by flooring its
// generator coordinates.
inline SimplicialConeData lattice_parallelotope(const IMat& gen) {
    if (gen.rows != gen.cols || gen.rows == 0)
        throw std::invalid_argument("lattice_parallelotope: generators must form a square matrix");
    const std::size_t n = gen.rows;
    SnfResult s = smith_normal_form(gen);
    Int index = 1;
    for (std::size_t i = 0; i < n; ++i) index *= s.d.at(i, i);
    if (index == 0) throw std::invalid_argument("lattice_parallelotope: generators are dependent");

    IMat uinv = unimodular_inverse(s.u);
    std::vector<std::vector<Rat>> ginv = rational_inverse(gen);

    SimplicialConeData out;
    out.gen = gen;
    out.index = index;
    out.lpar.reserve(static_cast<std::size_t>(index > 4096 ? Int(4096) : index));

    IVec r(n, Int(0));
    while (true) {
        IVec x = mat_vec(uinv, r);
        // lambda = gen^-1 x; p = x - gen * floor(lambda) lies in par(gen)
        IVec fl(n);
        for (std::size_t i = 0; i < n; ++i) {
            Rat a = 0;
            for (std::size_t j = 0; j < n; ++j) a += ginv[i][j] * Rat(x[j]);
            fl[i] = rat_floor(a);
        }
        IVec p = x;
        for (std::size_t j = 0; j < n; ++j) {
            if (fl[j] == 0) continue;
            for (std::size_t i = 0; i < n; ++i) p[i] -= gen.at(i, j) * fl[j];
        }
        out.lpar.push_back(std::move(p));

        // next mixed-radix residue
        std::size_t k = 0;
        while (k < n) {
            r[k] += 1;
            if (r[k] < s.d.at(k, k)) break;
            r[k] = 0;
            ++k;
        }
        if (k == n) break;
    }
    std::sort(out.lpar.begin(), out.lpar.end(), lex_less);
    if (Int(out.lpar.size()) != index)
        throw std::logic_error("lattice_parallelotope: representative count mismatch");
    return out;
}

// Histogram of a linear form over the parallelotope points.
inline std::map<Int, std::size_t> lpar_height_census(const SimplicialConeData& cone,
                                                     const IVec& form) {
    std::map<Int, std::size_t> census;
    for (const IVec& p : cone.lpar) ++census[dot(form, p)];
    return census;
}

// Generator matrix of the homogenized cone over a d-simplex: columns (v_i, 1).
inline IMat homogenized_simplex_generators(const std::vector<IVec>& verts) {
    const std::size_t d = verts.at(0).size();
    if (verts.size() != d + 1)
        throw std::invalid_argument("homogenized_simplex_generators: need d+1 vertices");
    IMat gen(d + 1, d + 1);
    for (std::size_t j = 0; j < d + 1; ++j) {
        for (std::size_t i = 0; i < d; ++i) gen.at(i, j) = verts[j][i];
        gen.at(d, j) = 1;
    }
    return gen;
}

} // namespace latpol
