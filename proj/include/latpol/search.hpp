#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "latpol/certify.hpp"
#include "latpol/gallery.hpp"
#include "latpol/rng.hpp"

namespace latpol {

enum class StartMode { unimodular_walk, shrunk_parallelotope, random_simplex };
enum class ExtendStrategy { height1_random, param_volume, param_avg_multiplicity, mixed };

inline const char* to_string(StartMode m) {
    switch (m) {
    case StartMode::unimodular_walk: return "unimodular-walk";
    case StartMode::shrunk_parallelotope: return "shrunk-parallelotope";
    case StartMode::random_simplex: return "random-simplex";
    }
    return "?";
}

inline const char* to_string(ExtendStrategy s) {
    switch (s) {
    case ExtendStrategy::height1_random: return "h1";
    case ExtendStrategy::param_volume: return "vol";
    case ExtendStrategy::param_avg_multiplicity: return "mult";
    case ExtendStrategy::mixed: return "mixed";
    }
    return "?";
}

inline StartMode parse_start_mode(const std::string& s) {
    if (s == "unimodular-walk" || s == "U") return StartMode::unimodular_walk;
    if (s == "shrunk-parallelotope" || s == "S") return StartMode::shrunk_parallelotope;
    if (s == "random-simplex" || s == "R") return StartMode::random_simplex;
    throw std::invalid_argument("unknown start mode: " + s);
}

inline ExtendStrategy parse_strategy(const std::string& s) {
    if (s == "h1") return ExtendStrategy::height1_random;
    if (s == "vol") return ExtendStrategy::param_volume;
    if (s == "mult") return ExtendStrategy::param_avg_multiplicity;
    if (s == "mixed") return ExtendStrategy::mixed;
    throw std::invalid_argument("unknown strategy: " + s);
}

struct SearchConfig {
    std::size_t dim = 3;
    std::uint64_t seed = 1;
    std::size_t max_lattice_points = 100; // restart once a chain grows past this
    StartMode start = StartMode::unimodular_walk;
    ExtendStrategy strategy = ExtendStrategy::height1_random;
    std::int64_t coord_lo = -10; // sampling range for random vertices
    std::int64_t coord_hi = 30;
    int workers = 1;
    std::size_t runs = 1;
    std::size_t max_restarts = 8; // per run, before giving up
    // Height cap for the hunt phase. Final certification always uses the full
    // per-facet bounds; a jump the capped scan misses is found there and the
    // chain continues from it. Unset means 1 + width(P), adjusted per step.
    std::optional<Int> height_cap;
    // Fixed start polytope, overriding `start` (e.g. to certify a known
    // candidate via the same loop).
    std::optional<LatticePolytope> fixed_start;
    std::string output_dir; // when nonempty: per-run chain logs and certificates
};

inline void validate(const SearchConfig& cfg) {
    if (cfg.dim < 2) throw std::invalid_argument("search: dim must be at least 2");
    if (cfg.max_lattice_points < cfg.dim + 1)
        throw std::invalid_argument("search: max_lattice_points must be at least dim+1");
    if (cfg.coord_lo > cfg.coord_hi) throw std::invalid_argument("search: empty coordinate range");
    if (cfg.runs == 0) throw std::invalid_argument("search: runs must be positive");
    if (cfg.height_cap && *cfg.height_cap < 1)
        throw std::invalid_argument("search: height cap must be positive");
    if (cfg.fixed_start && cfg.fixed_start->dim() != cfg.dim)
        throw std::invalid_argument("search: fixed start has the wrong dimension");
}

// Random lattice walk upward from the unit simplex: a seeded number of
// uniformly chosen height-1 extensions. Such steps always stay normal, so the
// result needs no re-verification. Stops early if some intermediate has no
// height-1 point (rare but possible).
inline LatticePolytope start_unimodular_walk(const SearchConfig& cfg, Rng& rng) {
    LatticePolytope P = unit_simplex(cfg.dim);
    const std::int64_t room =
        static_cast<std::int64_t>(cfg.max_lattice_points) - static_cast<std::int64_t>(cfg.dim + 1);
    const std::int64_t steps = rng.uniform(0, std::min<std::int64_t>(30, std::max<std::int64_t>(room, 0)));
    for (std::int64_t s = 0; s < steps; ++s) {
        auto js = height1_jumps(P);
        if (js.empty()) break;
        P = extend_by_point(P, rng.pick(js));
    }
    return P;
}

inline LatticePolytope start_unimodular_walk(const SearchConfig& cfg) {
    Rng rng(cfg.seed);
    return start_unimodular_walk(cfg, rng);
}

namespace detail {

inline std::vector<std::size_t> shuffled_indices(std::size_t n, Rng& rng) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = n; i > 1; --i) {
        auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(i) - 1));
        std::swap(idx[i - 1], idx[j]);
    }
    return idx;
}

} // namespace detail

// Downward start: a seeded random lattice parallelotope (always normal), then
// repeatedly drop a random vertex and re-hull the remaining lattice points as
// long as the result stays full-dimensional and normal.
inline LatticePolytope start_shrunk_parallelotope(const SearchConfig& cfg, Rng& rng) {
    const std::size_t d = cfg.dim;
    std::vector<IVec> gens;
    for (;;) {
        gens.clear();
        for (std::size_t i = 0; i < d; ++i) {
            IVec g(d);
            for (std::size_t j = 0; j < d; ++j) g[j] = rng.uniform(-3, 3);
            gens.push_back(std::move(g));
        }
        if (determinant(IMat::from_rows(gens)) != 0) break;
    }
    std::vector<IVec> corners;
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
        IVec v(d, Int(0));
        for (std::size_t i = 0; i < d; ++i)
            if (mask & (std::size_t{1} << i)) v = add(v, gens[i]);
        corners.push_back(std::move(v));
    }
    LatticePolytope P = convex_hull(std::move(corners));
    for (bool shrunk = true; shrunk;) {
        shrunk = false;
        const auto& verts = P.vertices();
        for (std::size_t i : detail::shuffled_indices(verts.size(), rng)) {
            const IVec v = verts[i];
            std::vector<IVec> rest;
            for (const IVec& w : lattice_points(P))
                if (w != v) rest.push_back(w);
            if (rest.empty()) continue;
            try {
                LatticePolytope T = convex_hull(std::move(rest));
                if (is_normal(T).normal) {
                    P = std::move(T);
                    shrunk = true;
                    break;
                }
            } catch (const LowDimensionError&) {
            }
        }
    }
    return P;
}

inline LatticePolytope start_shrunk_parallelotope(const SearchConfig& cfg) {
    Rng rng(cfg.seed);
    return start_shrunk_parallelotope(cfg, rng);
}

// One seeded sample of d+1 points in the coordinate range. Returns the simplex
// only if all points are vertices of a full-dimensional normal simplex.
inline std::optional<LatticePolytope> random_simplex(const SearchConfig& cfg, Rng& rng) {
    std::vector<IVec> pts;
    for (std::size_t i = 0; i <= cfg.dim; ++i) {
        IVec p(cfg.dim);
        for (std::size_t j = 0; j < cfg.dim; ++j) p[j] = rng.uniform(cfg.coord_lo, cfg.coord_hi);
        pts.push_back(std::move(p));
    }
    try {
        LatticePolytope P = convex_hull(std::move(pts));
        if (P.vertices().size() != cfg.dim + 1) return std::nullopt;
        if (!is_normal(P).normal) return std::nullopt;
        return P;
    } catch (const LowDimensionError&) {
        return std::nullopt;
    }
}

inline std::optional<LatticePolytope> random_simplex(const SearchConfig& cfg) {
    Rng rng(cfg.seed);
    return random_simplex(cfg, rng);
}

struct ExtendResult {
    IVec z;
    LatticePolytope Q;
    Int height;
    bool via_height1 = false; // chosen from the first stratum without a full scan
};

// Counters for the exhaustive-scan path of extend_step: how many candidates of
// the lowest occupied height were seen and how many of them were jumps. Kept
// as an observational statistic only; nothing downstream assumes a relation.
struct ScanStats {
    std::uint64_t lowest_points = 0;
    std::uint64_t lowest_jumps = 0;
};

// One extension step. height1_random picks uniformly from the first stratum
// when it is occupied; the parametrized strategies score every accepted jump
// in the candidate region (clamped to height_cap when given) and take the
// argmax, ties broken by lexicographically least point. Returns nullopt only
// when the scan found no jump at all.
inline std::optional<ExtendResult> extend_step(const LatticePolytope& P, ExtendStrategy strategy,
                                               Rng& rng,
                                               const std::optional<Int>& height_cap = std::nullopt,
                                               ScanStats* stats = nullptr) {
    if (strategy == ExtendStrategy::height1_random || strategy == ExtendStrategy::mixed) {
        auto js = height1_jumps(P);
        if (!js.empty()) {
            const IVec& z = rng.pick(js);
            return ExtendResult{z, extend_by_point(P, z), Int(1), true};
        }
    }

    // Clamping every per-facet bound to the cap enumerates exactly the
    // candidates of height at most the cap: a point has height <= c iff its
    // deficit is <= c on every facet.
    std::vector<Int> relax = jump_height_bounds(P);
    if (height_cap)
        for (Int& b : relax)
            if (*height_cap < b) b = *height_cap;
    std::vector<IVec> cands;
    candidates_in_box(P, relax, relaxed_box(P, relax), [&](const IVec& z) {
        cands.push_back(z);
        return true;
    });
    struct Scored {
        IVec z;
        LatticePolytope Q;
        Int height;
    };
    std::vector<Scored> accepted;
    std::optional<Int> lowest;
    std::uint64_t lowest_points = 0, lowest_jumps = 0;
    for (IVec& z : cands) {
        Int h = P.height_over(z);
        bool ok = is_jump(P, z).accepted;
        if (!lowest || h < *lowest) {
            lowest = h;
            lowest_points = 0;
            lowest_jumps = 0;
        }
        if (h == *lowest) {
            ++lowest_points;
            if (ok) ++lowest_jumps;
        }
        if (ok) {
            LatticePolytope Q = extend_by_point(P, z);
            accepted.push_back({std::move(z), std::move(Q), std::move(h)});
        }
    }
    if (stats) {
        stats->lowest_points += lowest_points;
        stats->lowest_jumps += lowest_jumps;
    }
    if (accepted.empty()) return std::nullopt;

    std::size_t best = 0;
    switch (strategy) {
    case ExtendStrategy::height1_random:
    case ExtendStrategy::mixed:
        if (strategy == ExtendStrategy::height1_random) {
            // no height-1 point exists; fall back to a uniform choice among
            // the lowest jumps found
            Int minh = accepted[0].height;
            for (const auto& a : accepted)
                if (a.height < minh) minh = a.height;
            std::vector<std::size_t> low;
            for (std::size_t i = 0; i < accepted.size(); ++i)
                if (accepted[i].height == minh) low.push_back(i);
            best = low[static_cast<std::size_t>(
                rng.uniform(0, static_cast<std::int64_t>(low.size()) - 1))];
            break;
        }
        [[fallthrough]]; // mixed falls back to the volume strategy
    case ExtendStrategy::param_volume: {
        Int best_vol = jump_volume(P, accepted[0].Q);
        for (std::size_t i = 1; i < accepted.size(); ++i) {
            Int v = jump_volume(P, accepted[i].Q);
            if (v > best_vol || (v == best_vol && lex_less(accepted[i].z, accepted[best].z))) {
                best = i;
                best_vol = std::move(v);
            }
        }
        break;
    }
    case ExtendStrategy::param_avg_multiplicity: {
        auto avg_mult = [](const LatticePolytope& Q) {
            Int total = 0;
            for (std::size_t i = 0; i < Q.facets().size(); ++i) total += facet_multiplicity(Q, i);
            return Rat(total) / Rat(Int(Q.facets().size()));
        };
        Rat best_score = avg_mult(accepted[0].Q);
        for (std::size_t i = 1; i < accepted.size(); ++i) {
            Rat s = avg_mult(accepted[i].Q);
            if (s > best_score || (s == best_score && lex_less(accepted[i].z, accepted[best].z))) {
                best = i;
                best_score = std::move(s);
            }
        }
        break;
    }
    }
    auto& a = accepted[best];
    return ExtendResult{std::move(a.z), std::move(a.Q), std::move(a.height), false};
}

struct SearchRun {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    std::size_t restarts = 0;
    bool found_maximal = false;
    std::vector<std::string> chain;
    std::optional<MaximalityCertificate> certificate;
    std::map<std::int64_t, std::uint64_t> jump_heights;
    ScanStats scan_stats;
};

struct SearchReport {
    SearchConfig config;
    std::vector<SearchRun> runs;
    std::size_t runs_attempted = 0;
    std::size_t maximal_found = 0;
    std::map<std::int64_t, std::uint64_t> jump_heights;
    ScanStats scan_stats;
};

namespace detail {

inline std::string describe(const LatticePolytope& P) {
    return std::to_string(P.vertices().size()) + " vertices, " +
           std::to_string(lattice_point_count(P)) + " lattice points";
}

inline std::optional<LatticePolytope> make_start(const SearchConfig& cfg, Rng& rng,
                                                 std::vector<std::string>& log) {
    if (cfg.fixed_start) return *cfg.fixed_start;
    switch (cfg.start) {
    case StartMode::unimodular_walk: return start_unimodular_walk(cfg, rng);
    case StartMode::shrunk_parallelotope: return start_shrunk_parallelotope(cfg, rng);
    case StartMode::random_simplex:
        for (int tries = 0; tries < 256; ++tries) {
            if (auto P = random_simplex(cfg, rng)) return P;
        }
        log.push_back("start: no admissible random simplex in 256 draws");
        return std::nullopt;
    }
    return std::nullopt;
}

// True when the cap does not cut the candidate region, i.e. a capped scan was
// already exhaustive.
inline bool cap_covers_bounds(const LatticePolytope& P, const Int& cap) {
    for (const Int& b : jump_height_bounds(P))
        if (cap < b) return false;
    return true;
}

inline void run_one(const SearchConfig& cfg, SearchRun& R, int certify_workers) {
    Rng rng(R.seed);
    for (std::size_t attempt = 0; attempt <= cfg.max_restarts && !R.found_maximal; ++attempt) {
        if (attempt > 0) ++R.restarts;
        auto started = make_start(cfg, rng, R.chain);
        if (!started) continue;
        LatticePolytope P = std::move(*started);
        R.chain.push_back("start: " + describe(P));
        std::size_t stepno = 0;
        for (;;) {
            if (lattice_point_count(P) > cfg.max_lattice_points) {
                R.chain.push_back("restart: passed " + std::to_string(cfg.max_lattice_points) +
                                  " lattice points");
                break;
            }
            const Int cap = cfg.height_cap ? *cfg.height_cap : Int(1) + P.width();
            ScanStats st;
            auto step = extend_step(P, cfg.strategy, rng, cap, &st);
            R.scan_stats.lowest_points += st.lowest_points;
            R.scan_stats.lowest_jumps += st.lowest_jumps;
            if (step) {
                ++stepno;
                R.chain.push_back("step " + std::to_string(stepno) + ": z=" +
                                  vec_to_string(step->z) + " ht=" + int_to_string(step->height) +
                                  " strategy=" + (step->via_height1 ? "h1" : to_string(cfg.strategy)));
                ++R.jump_heights[to_int64(step->height)];
                P = std::move(step->Q);
                continue;
            }
            // Nothing under the cap. If the cap was binding, probe the full
            // candidate region before concluding anything.
            if (!cap_covers_bounds(P, cap)) {
                CertifyOptions probe_opts;
                probe_opts.mode = CertifyMode::search;
                probe_opts.workers = certify_workers;
                auto probe = certify_maximal(P, probe_opts);
                if (probe.accepted) {
                    const IVec z = *probe.accepted;
                    ++stepno;
                    Int h = P.height_over(z);
                    R.chain.push_back("step " + std::to_string(stepno) + ": z=" + vec_to_string(z) +
                                      " ht=" + int_to_string(h) + " strategy=above-cap");
                    ++R.jump_heights[to_int64(h)];
                    P = extend_by_point(P, z);
                    continue;
                }
            }
            CertifyOptions final_opts;
            final_opts.workers = certify_workers;
            auto cert = certify_maximal(P, final_opts);
            if (!cert.maximal)
                throw std::logic_error("search: capped scan and certification disagree");
            R.found_maximal = true;
            R.certificate = std::move(cert);
            R.chain.push_back("maximal: " + describe(P) + ", " +
                              std::to_string(R.certificate->candidate_count) +
                              " candidates certified");
            break;
        }
    }
}

} // namespace detail

inline Json search_report_to_json(const SearchReport& rep) {
    const SearchConfig& cfg = rep.config;
    Json jc;
    jc["dim"] = cfg.dim;
    jc["seed"] = cfg.seed;
    jc["max_lattice_points"] = cfg.max_lattice_points;
    jc["start"] = cfg.fixed_start ? "fixed" : to_string(cfg.start);
    jc["strategy"] = to_string(cfg.strategy);
    jc["coordinate_range"] = Json::array({cfg.coord_lo, cfg.coord_hi});
    jc["workers"] = cfg.workers;
    jc["runs"] = cfg.runs;
    jc["max_restarts"] = cfg.max_restarts;
    jc["height_cap"] = cfg.height_cap ? json_int(*cfg.height_cap) : Json("auto");

    Json jruns = Json::array();
    for (const SearchRun& r : rep.runs) {
        Json jr;
        jr["index"] = r.index;
        jr["seed"] = r.seed;
        jr["restarts"] = r.restarts;
        jr["found_maximal"] = r.found_maximal;
        jr["chain"] = r.chain;
        if (r.certificate) jr["certificate"] = certificate_to_json(*r.certificate);
        jruns.push_back(std::move(jr));
    }

    Json jh = Json::object();
    for (const auto& [h, n] : rep.jump_heights) jh[std::to_string(h)] = n;

    Json out;
    out["config"] = std::move(jc);
    out["runs_attempted"] = rep.runs_attempted;
    out["maximal_found"] = rep.maximal_found;
    out["jump_heights"] = std::move(jh);
    out["lowest_stratum"] = Json{{"points", rep.scan_stats.lowest_points},
                                 {"jumps", rep.scan_stats.lowest_jumps}};
    out["runs"] = std::move(jruns);
    return out;
}

// Top-level hunt loop: seeded independent runs, each a chain of extension
// steps from a start polytope, restarting on lattice-point overflow. A run
// ends successfully when the full certification confirms no jump exists. The
// report is identical for every worker count: runs are seeded independently
// and merged in index order, and certification output is itself
// order-independent.
inline SearchReport run_search(const SearchConfig& cfg) {
    validate(cfg);
    SearchReport rep;
    rep.config = cfg;
    rep.runs_attempted = cfg.runs;
    rep.runs.resize(cfg.runs);
    // Parallelism goes across runs when there are several, otherwise into the
    // certification of the single run.
    const int run_workers = cfg.runs > 1 ? effective_workers(cfg.workers) : 1;
    const int certify_workers = cfg.runs > 1 ? 1 : effective_workers(cfg.workers);
    for (std::size_t i = 0; i < cfg.runs; ++i) {
        rep.runs[i].index = i;
        rep.runs[i].seed = Rng::derive(cfg.seed, i);
    }
    run_indexed(cfg.runs, run_workers,
                [&](std::size_t i) { detail::run_one(cfg, rep.runs[i], certify_workers); });
    for (const SearchRun& r : rep.runs) {
        if (r.found_maximal) ++rep.maximal_found;
        for (const auto& [h, n] : r.jump_heights) rep.jump_heights[h] += n;
        rep.scan_stats.lowest_points += r.scan_stats.lowest_points;
        rep.scan_stats.lowest_jumps += r.scan_stats.lowest_jumps;
    }
    if (!cfg.output_dir.empty()) {
        std::filesystem::create_directories(cfg.output_dir);
        for (const SearchRun& r : rep.runs) {
            std::string base = cfg.output_dir + "/run" + std::to_string(r.index);
            std::string log;
            for (const std::string& line : r.chain) log += line + "\n";
            write_file(base + ".log", log);
            if (r.certificate)
                write_file(base + "_certificate.json", certificate_to_json(*r.certificate).dump(2) + "\n");
        }
    }
    return rep;
}

} // namespace latpol
