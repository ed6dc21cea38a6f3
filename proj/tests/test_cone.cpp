#include <catch2/catch_amalgamated.hpp>

#include "latpol/cone.hpp"
#include "latpol/enumerate.hpp"
#include "latpol/rng.hpp"
#include "latpol/triangulate.hpp"

using namespace latpol;

namespace {

IVec v(std::initializer_list<long> xs) {
    IVec out;
    for (long x : xs) out.push_back(x);
    return out;
}

bool in_half_open_parallelotope(const IMat& gen, const IVec& p) {
    auto ginv = rational_inverse(gen);
    for (std::size_t i = 0; i < gen.rows; ++i) {
        Rat lam = 0;
        for (std::size_t j = 0; j < gen.rows; ++j) lam += ginv[i][j] * Rat(p[j]);
        if (lam < 0 || lam >= 1) return false;
    }
    return true;
}

} // namespace

TEST_CASE("parallelotope points of a pinned two-dimensional cone") {
    auto data = lattice_parallelotope(IMat::from_cols({v({1, 0}), v({1, 2})}));
    CHECK(data.index == 2);
    REQUIRE(data.lpar.size() == 2);
    CHECK(data.lpar[0] == v({0, 0}));
    CHECK(data.lpar[1] == v({1, 1}));
}

TEST_CASE("unimodular cones have a single parallelotope point") {
    auto data = lattice_parallelotope(IMat::from_cols({v({1, 0, 0}), v({3, 1, 0}), v({-7, 4, 1})}));
    CHECK(data.index == 1);
    REQUIRE(data.lpar.size() == 1);
    CHECK(is_zero(data.lpar[0]));
}

TEST_CASE("parallelotope point count equals the index") {
    Rng rng(1710);
    int done = 0;
    while (done < 60) {
        std::size_t n = static_cast<std::size_t>(rng.uniform(2, 4));
        IMat gen(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) gen.at(i, j) = rng.uniform(-4, 4);
        Int det = abs_int(determinant(gen));
        if (det == 0 || det > 400) continue;
        ++done;
        auto data = lattice_parallelotope(gen);
        CHECK(data.index == det);
        CHECK(Int(data.lpar.size()) == det);
        for (std::size_t i = 0; i + 1 < data.lpar.size(); ++i)
            CHECK(lex_less(data.lpar[i], data.lpar[i + 1]));
        for (const IVec& p : data.lpar) CHECK(in_half_open_parallelotope(gen, p));
        CHECK(sorted_contains(data.lpar, IVec(n, Int(0))));
    }
}

TEST_CASE("parallelotope points are pairwise distinct modulo the generator lattice") {
    Rng rng(2024);
    int done = 0;
    while (done < 20) {
        IMat gen(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) gen.at(i, j) = rng.uniform(-3, 3);
        Int det = abs_int(determinant(gen));
        if (det < 2 || det > 25) continue;
        ++done;
        auto data = lattice_parallelotope(gen);
        for (std::size_t a = 0; a < data.lpar.size(); ++a)
            for (std::size_t b = a + 1; b < data.lpar.size(); ++b) {
                // difference must not solve gen*x = diff integrally
                IVec diff = sub(data.lpar[a], data.lpar[b]);
                QVec sol = solve_rational(gen, diff);
                bool integral = true;
                for (const Rat& s : sol)
                    if (denominator(s) != 1) integral = false;
                CHECK_FALSE(integral);
            }
    }
}

TEST_CASE("degenerate generators are rejected") {
    CHECK_THROWS_AS(lattice_parallelotope(IMat::from_cols({v({1, 2}), v({2, 4})})),
                    std::invalid_argument);
    CHECK_THROWS_AS(lattice_parallelotope(IMat(2, 3)), std::invalid_argument);
}

TEST_CASE("height census of an empty simplex concentrates in middle degree") {
    // conv(0, e1, e3, q e1 + p e2 + e3) has no lattice points besides its
    // vertices; its homogenized parallelotope has one point at degree 0 and
    // the remaining p-1 at degree 2
    for (auto [p, q] : std::vector<std::pair<long, long>>{{2, 1}, {3, 1}, {3, 2}, {5, 2}, {7, 3}}) {
        auto gen = homogenized_simplex_generators(
            {v({0, 0, 0}), v({1, 0, 0}), v({0, 0, 1}), v({q, p, 1})});
        auto data = lattice_parallelotope(gen);
        CHECK(data.index == p);
        auto census = lpar_height_census(data, v({0, 0, 0, 1}));
        REQUIRE(census.count(0) == 1);
        CHECK(census.at(0) == 1);
        if (p > 1) {
            REQUIRE(census.count(2) == 1);
            CHECK(census.at(2) == static_cast<std::size_t>(p - 1));
        }
        CHECK(census.count(1) == 0);
        CHECK(census.count(3) == 0);

        // and the simplex really is empty
        auto S = convex_hull({v({0, 0, 0}), v({1, 0, 0}), v({0, 0, 1}), v({q, p, 1})});
        CHECK(lattice_points(S).size() == 4);
    }
}

TEST_CASE("facet-simplex cones over an outside point have uniform height strata") {
    // for a simplex D in a facet F and a point z below F, the parallelotope of
    // the cone over (D, z) carries equally many points at each of the heights
    // 0, -1, ..., ht_F(z)+1
    Rng rng(5150);
    int done = 0;
    while (done < 25) {
        std::vector<IVec> pts;
        for (int i = 0; i < 6; ++i) {
            IVec p(3);
            for (std::size_t j = 0; j < 3; ++j) p[j] = rng.uniform(-3, 3);
            pts.push_back(std::move(p));
        }
        LatticePolytope P;
        try {
            P = convex_hull(pts);
        } catch (const LowDimensionError&) {
            continue;
        }
        IVec z(3);
        for (std::size_t j = 0; j < 3; ++j) z[j] = rng.uniform(-8, 8);
        auto vis = P.visible_facets(z);
        if (vis.empty()) continue;
        ++done;
        for (std::size_t fi : vis) {
            const auto& f = P.facets()[fi];
            Int h = -f.eval(z);
            REQUIRE(h > 0);
            for (const auto& simplex : placing_triangulation_of_facet(P, fi)) {
                std::vector<IVec> gens = simplex;
                gens.push_back(z);
                auto data = lattice_parallelotope(homogenized_simplex_generators(gens));
                IVec form = f.alpha;
                form.push_back(f.beta);
                auto census = lpar_height_census(data, form);
                REQUIRE(data.index % h == 0);
                Int per = data.index / h;
                Int levels = 0;
                for (const auto& [height, cnt] : census) {
                    CHECK(height <= 0);
                    CHECK(height > -h);
                    CHECK(Int(cnt) == per);
                    ++levels;
                }
                CHECK(levels == h);
            }
        }
    }
}
