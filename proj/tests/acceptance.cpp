// End-to-end acceptance checks, one line of output per criterion. Exits
// nonzero if any executed criterion fails. The five-dimensional census is far
// slower than everything else, so it only runs when asked:
//
//   acceptance              criteria 1-3 and 5-14
//   acceptance --p5-census  criterion 4 alone
//   acceptance --only N     a single criterion, for debugging

#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>

#include "latpol/search.hpp"

using namespace latpol;

namespace {

struct Failure {
    std::string what;
};

void expect(bool ok, const std::string& what) {
    if (!ok) throw Failure{what};
}

IVec v(std::initializer_list<long> xs) {
    IVec out;
    for (long x : xs) out.push_back(x);
    return out;
}

LatticePolytope dilate(const LatticePolytope& P, const Int& c) {
    std::vector<IVec> pts;
    for (const IVec& w : P.vertices()) pts.push_back(scale(c, w));
    return convex_hull(std::move(pts));
}

// Seeded random polytope: hull of `count` points with coordinates in
// [0, range], discarded unless full-dimensional; optionally kept only when
// normal.
std::optional<LatticePolytope> random_polytope(Rng& rng, std::size_t d, int count, long range,
                                               bool require_normal) {
    std::vector<IVec> pts;
    for (int i = 0; i < count; ++i) {
        IVec p(d);
        for (std::size_t j = 0; j < d; ++j) p[j] = rng.uniform(0, range);
        pts.push_back(std::move(p));
    }
    try {
        LatticePolytope P = convex_hull(std::move(pts));
        if (require_normal && !is_normal(P).normal) return std::nullopt;
        return P;
    } catch (const LowDimensionError&) {
        return std::nullopt;
    }
}

// A rejected candidate's witness must re-validate independently.
void check_witness(const LatticePolytope& P, const IVec& z, const JumpVerdict& verdict) {
    expect(!verdict.accepted, "witness check applies to rejections only");
    expect(verdict.witness.has_value(), "rejection without witness at " + vec_to_string(z));
    const IVec& w = *verdict.witness;
    LatticePolytope Q = extend_by_point(P, z);
    if (verdict.reason == JumpReason::extra_point) {
        expect(Q.contains(w), "extra-point witness outside conv(P,z)");
        expect(!P.contains(w) && w != z, "extra-point witness is not extra");
    } else {
        const Int k = verdict.level;
        expect(k >= 2, "non-normal witness level must be at least 2");
        expect(Q.contains_dilated(w, k), "witness not in the k-th dilation");
        for (const IVec& q : lattice_points(Q))
            expect(!Q.contains_dilated(sub(w, q), k - 1),
                   "witness decomposes at " + vec_to_string(z));
    }
}

// ---- criteria ------------------------------------------------------------

void table_reproduction() {
    struct Row {
        const char* name;
        std::size_t points;
        std::vector<std::pair<long, long>> profile;
    };
    const std::vector<Row> rows{
        {"P4",
         41,
         {{8, 10}, {20, 4}, {29, 4}, {32, 10}, {40, 2}, {66, 4}, {80, 4}, {91, 4}, {116, 1},
          {160, 2}, {180, 1}}},
        {"P5",
         42,
         {{24, 18}, {24, 18}, {27, 18}, {27, 18}, {48, 9}, {105, 9}, {105, 9}, {105, 9},
          {105, 9}, {105, 9}}},
        {"P4prime", 22, {{24, 8}, {48, 4}, {48, 4}, {48, 4}, {48, 4}}},
    };
    for (const auto& row : rows) {
        auto P = maximal_polytope(row.name);
        expect(lattice_point_count(P) == row.points, std::string(row.name) + ": point count");
        std::vector<std::pair<Int, Int>> profile;
        for (std::size_t i = 0; i < P.facets().size(); ++i)
            profile.emplace_back(P.facet_width(i), facet_multiplicity(P, i));
        std::sort(profile.begin(), profile.end());
        std::vector<std::pair<Int, Int>> want;
        for (auto [wd, mu] : row.profile) want.emplace_back(wd, mu);
        std::sort(want.begin(), want.end());
        expect(profile == want, std::string(row.name) + ": facet width/multiplicity profile");
    }
}

void census(const char* name, std::uint64_t candidates, std::size_t survivors) {
    auto P = maximal_polytope(name);
    CertifyOptions opts;
    opts.workers = 0; // all hardware threads
    auto cert = certify_maximal(P, opts);
    std::ostringstream got;
    got << cert.candidate_count << "/" << cert.verdicts.size() << "/"
        << (cert.accepted ? 1 : 0);
    expect(cert.candidate_count == candidates && cert.verdicts.size() == survivors &&
               !cert.accepted && cert.maximal,
           std::string(name) + ": expected " + std::to_string(candidates) + "/" +
               std::to_string(survivors) + "/0, got " + got.str());
    for (const auto& cv : cert.verdicts) check_witness(P, cv.z, cv.verdict);
}

void p4_census() { census("P4", 196697, 84); }
void p5_census() { census("P5", 13525003, 980); }

void p4prime_maximal() {
    auto P = maximal_polytope("P4prime");
    CertifyOptions opts;
    opts.workers = 0;
    auto cert = certify_maximal(P, opts);
    expect(cert.maximal && !cert.accepted, "P4prime: expected a maximality certificate");
}

void cross_polytopes() {
    for (long k = 1; k <= 3; ++k) {
        auto P = cross_polytope(k);
        expect(is_normal(P).normal, "cross " + std::to_string(k) + ": normality");
        const Int want_width = Int(2 * k * (k + 1)) * Int(k * k + k + 1);
        expect(P.width() == want_width, "cross " + std::to_string(k) + ": width");
        for (const Int& w : P.facet_widths())
            expect(w == want_width, "cross " + std::to_string(k) + ": facet width");
        for (long j = 1; j < k; ++j)
            expect(stratum(P, Int(j)).empty(),
                   "cross " + std::to_string(k) + ": stratum " + std::to_string(j));
        IVec z = cross_polytope_jump_point(k);
        expect(P.height_over(z) == k, "cross " + std::to_string(k) + ": jump height");
        expect(is_single_point_extension(P, z),
               "cross " + std::to_string(k) + ": single-point extension");
        auto verdict = is_jump(P, z);
        expect(verdict.accepted, "cross " + std::to_string(k) + ": jump accepted");
    }
}

void sharp_bounds() {
    const std::pair<std::size_t, long> cases[] = {{3, 1}, {3, 2}, {3, 3}, {4, 1}, {4, 2}, {5, 1}};
    for (auto [d, w] : cases) {
        auto sp = sharp_pair(d, w);
        const std::string tag = "sharp " + std::to_string(d) + ":" + std::to_string(w);
        const Int want = Int(static_cast<long>(d - 2) * w + 1);
        expect(sp.polytope.height_over(sp.z) == want, tag + ": height");
        expect(is_jump(sp.polytope, sp.z).accepted, tag + ": accepted");
        // the height equals the per-facet bound of the unique visible facet
        auto bounds = jump_height_bounds(sp.polytope);
        auto vis = sp.polytope.visible_facets(sp.z);
        expect(vis.size() == 1, tag + ": one visible facet");
        expect(bounds[vis[0]] == want, tag + ": bound attained with equality");
    }
}

void criterion_equivalence() {
    Rng rng(401);
    int done3 = 0, done4 = 0;
    while (done3 < 200) {
        auto P = random_polytope(rng, 3, 6, 3, true);
        if (!P) continue;
        ++done3;
        for (const IVec& z : jump_candidates(*P)) {
            if (!is_single_point_extension(*P, z)) continue;
            bool a = is_jump(*P, z).accepted;
            bool b = is_jump_dim3(*P, z).accepted;
            bool c = is_jump_paracrit(*P, z).accepted;
            expect(a == b && b == c, "3d criteria disagree at " + vec_to_string(z));
        }
    }
    while (done4 < 50) {
        auto P = random_polytope(rng, 4, 7, 2, true);
        if (!P) continue;
        ++done4;
        for (const IVec& z : jump_candidates(*P)) {
            if (!is_single_point_extension(*P, z)) continue;
            bool a = is_jump(*P, z).accepted;
            bool c = is_jump_paracrit(*P, z).accepted;
            expect(a == c, "4d criteria disagree at " + vec_to_string(z));
        }
    }
}

void normality_oracle() {
    Rng rng(402);
    int done = 0;
    while (done < 200) {
        std::size_t d = 2 + static_cast<std::size_t>(rng.uniform(0, 2));
        auto P = random_polytope(rng, d, static_cast<int>(d) + 3, d == 4 ? 2 : 3, false);
        if (!P || lattice_point_count(*P) > 60) continue;
        ++done;
        auto fast = is_normal(*P);
        auto slow = is_normal_bruteforce(*P, static_cast<int>(d) + 1);
        expect(fast.normal == slow.normal, "normality oracle disagreement");
    }
    // dilations c >= d-1 are always normal, regardless of the input
    int dilated = 0;
    while (dilated < 40) {
        std::size_t d = 2 + static_cast<std::size_t>(rng.uniform(0, 1));
        auto P = random_polytope(rng, d, static_cast<int>(d) + 2, 2, false);
        if (!P) continue;
        ++dilated;
        auto D = dilate(*P, Int(d) - 1);
        expect(is_normal(D).normal, "dilation by d-1 not normal");
    }
    // lattice parallelotopes are always normal
    int para = 0;
    while (para < 25) {
        std::vector<IVec> gens;
        for (int i = 0; i < 3; ++i) {
            IVec g(3);
            for (int j = 0; j < 3; ++j) g[j] = rng.uniform(-2, 2);
            gens.push_back(std::move(g));
        }
        if (determinant(IMat::from_rows(gens)) == 0) continue;
        ++para;
        std::vector<IVec> corners;
        for (std::size_t mask = 0; mask < 8; ++mask) {
            IVec p(3, Int(0));
            for (std::size_t i = 0; i < 3; ++i)
                if (mask & (std::size_t{1} << i)) p = add(p, gens[i]);
            corners.push_back(std::move(p));
        }
        expect(is_normal(convex_hull(std::move(corners))).normal, "parallelotope not normal");
    }
}

void lpar_properties() {
    Rng rng(403);
    int done = 0;
    while (done < 500) {
        std::size_t d = 2 + static_cast<std::size_t>(rng.uniform(0, 2));
        IMat gen(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) gen.at(i, j) = rng.uniform(-4, 4);
        Int det = determinant(gen);
        if (det == 0 || abs_int(det) > 200) continue;
        ++done;
        auto data = lattice_parallelotope(gen);
        expect(Int(data.lpar.size()) == data.index, "lpar size is not |det|");

        // primitive form vanishing on the first d-1 generator columns,
        // positive on the last: cofactors of the dropped coordinate
        IVec alpha(d);
        Int sign = 1;
        for (std::size_t j = 0; j < d; ++j) {
            IMat minor(d - 1, d - 1);
            for (std::size_t r = 0; r + 1 < d; ++r) {
                std::size_t cc = 0;
                for (std::size_t c = 0; c < d; ++c) {
                    if (c == j) continue;
                    minor.at(r, cc++) = gen.at(c, r); // column r of gen, coordinate c
                }
            }
            alpha[j] = sign * determinant(minor);
            sign = -sign;
        }
        Int g = 0;
        for (const Int& a : alpha) g = gcd_int(g, a);
        expect(g != 0, "degenerate facet form");
        for (Int& a : alpha) a /= g;
        Int m = dot(alpha, gen.col(d - 1));
        if (m < 0) {
            m = -m;
            for (Int& a : alpha) a = -a;
        }
        for (std::size_t i = 0; i + 1 < d; ++i)
            expect(dot(alpha, gen.col(i)) == 0, "facet form does not vanish on the facet");

        auto hist = lpar_height_census(data, alpha);
        expect(data.index % m == 0, "height does not divide the index");
        const Int per = data.index / m;
        expect(Int(hist.size()) == m, "height census misses levels");
        for (const auto& [h, n] : hist) {
            expect(h >= 0 && h < m, "height out of range");
            expect(Int(n) == per, "uneven height census");
        }
    }
    // empty simplices carry no homogenized parallelotope points in degrees
    // 1 and 3
    for (long p = 2; p <= 7; ++p) {
        for (long q = 1; q < p; ++q) {
            if (std::gcd(p, q) != 1) continue;
            auto D = empty_simplex(p, q);
            auto data = lattice_parallelotope(homogenized_simplex_generators(D.vertices()));
            auto hist = lpar_height_census(data, v({0, 0, 0, 1}));
            expect(hist.count(1) == 0, "empty simplex lpar point in degree 1");
            expect(hist.count(3) == 0, "empty simplex lpar point in degree 3");
        }
    }
}

void height1_jumps_accepted() {
    Rng rng(404);
    int done = 0;
    while (done < 60) {
        std::size_t d = 2 + static_cast<std::size_t>(rng.uniform(0, 1));
        auto P = random_polytope(rng, d, static_cast<int>(d) + 3, 3, true);
        if (!P) continue;
        ++done;
        for (const IVec& z : height1_jumps(*P))
            expect(is_jump(*P, z).accepted, "height-1 point rejected at " + vec_to_string(z));
        if (d == 2) {
            for (const IVec& z : jump_candidates(*P)) {
                if (!is_single_point_extension(*P, z)) continue;
                if (is_jump(*P, z).accepted)
                    expect(P->height_over(z) == 1,
                           "2d jump above height 1 at " + vec_to_string(z));
            }
        }
    }
}

void dark_vertex() {
    auto P = dark_vertex_polygon();
    expect(is_dark_vertex(P, v({0, 0})), "origin not dark");
    expect(!height1_jumps(P).empty(), "pentagon has no jumps at all");
    CertifyOptions opts;
    auto cert = certify_maximal(P, opts);
    expect(!cert.maximal, "pentagon certified maximal");
}

void order_gap() {
    auto [P, Q] = order_gap_example();
    expect(lattice_point_count(P) == 8, "P point count");
    expect(is_normal(P).normal, "P normality");
    expect(is_normal(Q).normal, "Q normality");
    for (const IVec& r : {v({0, 0, 2}), v({0, 0, 1})}) {
        std::vector<IVec> rest;
        for (const IVec& w : lattice_points(P))
            if (w != r) rest.push_back(w);
        auto T = convex_hull(std::move(rest));
        auto nv = is_normal(T);
        expect(!nv.normal, "one-point removal stayed normal");
        expect(nv.witness.has_value(), "nonnormality without witness");
        const Int k = nv.level;
        const IVec& w = *nv.witness;
        expect(T.contains_dilated(w, k), "witness outside the dilation");
        for (const IVec& q : lattice_points(T))
            expect(!T.contains_dilated(sub(w, q), k - 1), "witness decomposes");
    }
}

void ellipsoids() {
    for (long r = 1; r <= 8; ++r) {
        auto spec = EllipsoidSpec::ball(3, Rat(r));
        auto P = ellipsoid_hull(spec);
        expect(is_normal(P).normal, "ball hull not normal, r=" + std::to_string(r));
        expect(two_point_decomposition_check(spec, P),
               "two-point check failed, r=" + std::to_string(r));
        expect(!height1_jumps(P).empty(), "ball without height-1 jumps, r=" + std::to_string(r));
    }
    // the radius-2 ball admits jumps of height exactly 1 and 2, nothing higher
    {
        auto P = ellipsoid_hull(EllipsoidSpec::ball(3, Rat(2)));
        Int max_h = 0;
        for (const IVec& z : jump_candidates(P)) {
            if (!is_jump(P, z).accepted) continue;
            Int h = P.height_over(z);
            if (h > max_h) max_h = h;
        }
        expect(max_h == 2, "max jump height over B(0,2) is " + int_to_string(max_h));
    }
    Rng rng(405);
    int done = 0;
    while (done < 10) {
        QVec semi, center;
        for (int i = 0; i < 3; ++i) {
            semi.push_back(Rat(Int(rng.uniform(4, 10)), Int(rng.uniform(1, 3))));
            center.push_back(Rat(Int(rng.uniform(0, 3)), Int(rng.uniform(1, 3))));
        }
        auto spec = EllipsoidSpec::axis_aligned(semi, center);
        LatticePolytope P;
        try {
            P = ellipsoid_hull(spec);
        } catch (const LowDimensionError&) {
            continue;
        }
        ++done;
        expect(is_normal(P).normal, "ellipsoid hull not normal");
        expect(two_point_decomposition_check(spec, P), "ellipsoid two-point check failed");
    }
}

void bound_completeness() {
    Rng rng(406);
    int done = 0;
    while (done < 50) {
        auto P = random_polytope(rng, 3, 6, 3, true);
        if (!P || lattice_point_count(*P) > 25) continue;
        ++done;
        std::vector<Int> bounds = jump_height_bounds(*P);
        std::vector<Int> doubled;
        for (const Int& b : bounds) doubled.push_back(b * 2);
        // every accepted jump in the twice-relaxed region must satisfy the
        // per-facet bounds themselves
        candidates_in_box(*P, doubled, relaxed_box(*P, doubled), [&](const IVec& z) {
            bool inside_bounds = true;
            for (std::size_t i = 0; i < bounds.size() && inside_bounds; ++i)
                if (P->facets()[i].eval(z) < -bounds[i]) inside_bounds = false;
            if (inside_bounds) return true; // can only violate from outside
            if (!is_single_point_extension(*P, z)) return true;
            expect(!is_jump(*P, z).accepted,
                   "jump beyond the facet bound at " + vec_to_string(z));
            return true;
        });
    }
}

// ---- driver ----------------------------------------------------------------

struct Criterion {
    int id;
    const char* name;
    std::function<void()> run;
};

} // namespace

int main(int argc, char** argv) {
    bool p5 = false;
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--p5-census") == 0) {
            p5 = true;
        } else if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::cerr << "usage: acceptance [--p5-census] [--only N]\n";
            return 2;
        }
    }

    const std::vector<Criterion> criteria{
        {1, "table reproduction (P4, P5, P4prime)", table_reproduction},
        {2, "P4 census 196697/84/0 with re-validating witnesses", p4_census},
        {3, "P4prime certified maximal", p4prime_maximal},
        {4, "P5 census 13525003/980/0", p5_census},
        {5, "cross-polytopes k=1,2,3", cross_polytopes},
        {6, "sharp height bounds", sharp_bounds},
        {7, "jump criteria equivalence", criterion_equivalence},
        {8, "normality oracle agreement", normality_oracle},
        {9, "parallelotope point properties", lpar_properties},
        {10, "height-1 extensions are jumps", height1_jumps_accepted},
        {11, "dark vertex pentagon", dark_vertex},
        {12, "order-gap fixture", order_gap},
        {13, "ellipsoid hulls", ellipsoids},
        {14, "bound completeness spot-check", bound_completeness},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        if (only != 0 ? c.id != only : (p5 ? c.id != 4 : c.id == 4)) continue;
        auto t0 = std::chrono::steady_clock::now();
        std::string verdict = "PASS", detail;
        try {
            c.run();
        } catch (const Failure& f) {
            verdict = "FAIL";
            detail = f.what;
            ++failures;
        } catch (const std::exception& e) {
            verdict = "FAIL";
            detail = std::string("exception: ") + e.what();
            ++failures;
        }
        auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::ostringstream line;
        line << "criterion " << c.id << ": " << verdict << "  " << c.name << "  (";
        line.precision(1);
        line << std::fixed << secs << "s)";
        if (!detail.empty()) line << "  -- " << detail;
        std::cout << line.str() << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
