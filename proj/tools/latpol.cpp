#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "latpol/search.hpp"

using namespace latpol;

namespace {

struct CommonOpts {
    std::string in_path;
    std::string gallery_name;
    std::string format = "text";
    std::string out_path;
    std::string log_path;
};

// Post-parse flag value problems: exit code 2, like CLI11's own parse errors.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void add_input_flags(CLI::App* cmd, CommonOpts& o, bool input_required = true) {
    auto* in = cmd->add_option("--in", o.in_path, "polytope file (text or JSON)");
    auto* gal = cmd->add_option("--gallery", o.gallery_name, "built-in polytope name");
    in->excludes(gal);
    if (input_required) {
        // CLI11 cannot express "exactly one of", so check after parsing
        cmd->callback([&o, cmd]() {
            if (o.in_path.empty() && o.gallery_name.empty())
                throw CLI::RequiredError(cmd->get_name() + " needs --in or --gallery");
        });
    }
}

void add_output_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--out", o.out_path, "write the result to this file");
}

PolytopeFormat format_of(const CommonOpts& o) {
    return o.format == "json" ? PolytopeFormat::json : PolytopeFormat::text;
}

LatticePolytope load_input(const CommonOpts& o) {
    if (!o.in_path.empty()) return load_polytope(o.in_path);
    return gallery_polytope(o.gallery_name);
}

// Writes to --out when given, otherwise the artifact is the stdout result.
void emit(const CommonOpts& o, const std::string& artifact, const std::string& summary) {
    if (o.out_path.empty()) {
        std::cout << artifact;
    } else {
        write_file(o.out_path, artifact);
        std::cout << summary;
    }
}

Rat parse_rat(const std::string& s) {
    try {
        return Rat(s);
    } catch (const std::exception&) {
        throw UsageError("not a rational number: " + s);
    }
}

QVec parse_rat_list(const std::string& s) {
    QVec out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_rat(tok));
    if (out.empty()) throw UsageError("empty coordinate list");
    return out;
}

void require_normal(const LatticePolytope& P) {
    auto nv = is_normal(P);
    if (!nv.normal)
        throw std::invalid_argument(
            "input polytope is not normal (no decomposition for " + vec_to_string(*nv.witness) +
            " at degree " + std::to_string(nv.level) + ")");
}

int run(int argc, char** argv) {
    CLI::App app{"exact-arithmetic toolkit for lattice polytopes and quantum jumps"};
    CommonOpts o;
    std::uint64_t seed = 1;
    int workers = 1;
    std::size_t max_points = 100;
    std::string strategy = "h1", start_mode = "U", range = "-10:30", checkpoint, out_dir;
    std::int64_t cap = 0;
    std::size_t up_to = 3, runs = 1, max_restarts = 8;
    bool exhaustive = false;

    auto* hull = app.add_subcommand("hull", "canonical hull of a point file");
    add_input_flags(hull, o);
    add_output_flags(hull, o);

    auto* points = app.add_subcommand("points", "lattice points of a polytope");
    add_input_flags(points, o);
    add_output_flags(points, o);

    auto* normal = app.add_subcommand("normal", "normality test");
    add_input_flags(normal, o);
    add_output_flags(normal, o);

    auto* strata = app.add_subcommand("strata", "lattice strata around a polytope");
    add_input_flags(strata, o);
    add_output_flags(strata, o);
    strata->add_option("--up-to", up_to, "largest height to enumerate")->check(CLI::PositiveNumber);

    auto* widths = app.add_subcommand("widths", "facet widths and multiplicities");
    add_input_flags(widths, o);
    add_output_flags(widths, o);

    auto* jumps = app.add_subcommand("jumps", "quantum jumps over a normal polytope");
    add_input_flags(jumps, o);
    add_output_flags(jumps, o);
    jumps->add_option("--search-height-cap", cap, "scan candidates up to this height");
    jumps->add_flag("--exhaustive", exhaustive, "scan the full candidate bound");

    auto* certify = app.add_subcommand("certify-max", "certify that no jump exists");
    add_input_flags(certify, o);
    add_output_flags(certify, o);
    certify->add_option("--workers", workers, "parallel verification threads");
    certify->add_option("--search-height-cap", cap, "cap every facet bound (bounded scan)");
    certify->add_option("--checkpoint", checkpoint, "JSON-lines progress file for resume");
    certify->add_option("--log", o.log_path, "write the per-candidate log here");

    auto* search = app.add_subcommand("search", "hunt for maximal polytopes");
    add_input_flags(search, o, false);
    add_output_flags(search, o);
    std::size_t dim = 3;
    search->add_option("--dim", dim, "ambient dimension");
    search->add_option("--seed", seed, "master seed");
    search->add_option("--strategy", strategy, "extension strategy")
        ->check(CLI::IsMember({"h1", "vol", "mult", "mixed"}));
    search->add_option("--start", start_mode, "start polytope mode")
        ->check(CLI::IsMember({"U", "S", "R", "unimodular-walk", "shrunk-parallelotope",
                               "random-simplex"}));
    search->add_option("--max-points", max_points, "restart once a chain grows past this");
    search->add_option("--workers", workers, "parallel runs or verification threads");
    search->add_option("--runs", runs, "independent seeded runs");
    search->add_option("--max-restarts", max_restarts, "restart budget per run");
    search->add_option("--range", range, "coordinate range lo:hi for random starts");
    search->add_option("--search-height-cap", cap, "hunt-phase height cap (default 1+width)");
    search->add_option("--log", o.log_path, "write concatenated chain logs here");
    search->add_option("--out-dir", out_dir, "directory for per-run logs and certificates");

    auto* gallery = app.add_subcommand("gallery", "list or export built-in polytopes");
    add_input_flags(gallery, o, false);
    add_output_flags(gallery, o);

    auto* ellipsoid = app.add_subcommand("ellipsoid", "lattice points and hull of an ellipsoid");
    add_output_flags(ellipsoid, o);
    std::size_t edim = 3;
    std::string radius = "1", semiaxes, center;
    ellipsoid->add_option("--dim", edim, "ambient dimension");
    ellipsoid->add_option("--radius", radius, "ball radius (rational, e.g. 5/2)");
    ellipsoid->add_option("--semiaxes", semiaxes, "comma-separated rational semiaxes");
    ellipsoid->add_option("--center", center, "comma-separated rational center");

    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    if (cap < 0) throw UsageError("--search-height-cap must be nonnegative");

    // ---- execution -------------------------------------------------------

    if (hull->parsed()) {
        auto P = load_input(o);
        emit(o, polytope_to_string(P, format_of(o)),
             "hull: dim " + std::to_string(P.dim()) + ", " + std::to_string(P.vertices().size()) +
                 " vertices, " + std::to_string(P.facets().size()) + " facets\n");
        return 0;
    }

    if (points->parsed()) {
        auto P = load_input(o);
        const auto& pts = lattice_points(P);
        std::string artifact;
        if (format_of(o) == PolytopeFormat::json) {
            Json j = Json::array();
            for (const IVec& p : pts) j.push_back(json_vec(p));
            artifact = j.dump(2) + "\n";
        } else {
            std::ostringstream os;
            for (const IVec& p : pts) os << vec_to_string(p) << "\n";
            artifact = os.str();
        }
        emit(o, artifact, std::to_string(pts.size()) + " lattice points\n");
        return 0;
    }

    if (normal->parsed()) {
        auto P = load_input(o);
        auto nv = is_normal(P);
        if (nv.normal) {
            std::cout << "normal, " << lattice_point_count(P) << " lattice points\n";
        } else {
            std::cout << "not normal: " << vec_to_string(*nv.witness) << " in degree "
                      << nv.level << " is not a sum of lower degrees\n";
        }
        if (!o.out_path.empty()) {
            Json j;
            j["normal"] = nv.normal;
            j["lattice_points"] = lattice_point_count(P);
            if (!nv.normal) {
                j["witness"] = json_vec(*nv.witness);
                j["level"] = nv.level;
            }
            write_file(o.out_path, j.dump(2) + "\n");
        }
        return 0;
    }

    if (strata->parsed()) {
        auto P = load_input(o);
        Json j = Json::object();
        for (std::size_t h = 1; h <= up_to; ++h) {
            auto s = stratum(P, Int(static_cast<std::int64_t>(h)));
            std::cout << "stratum " << h << ": " << s.size() << " points\n";
            Json arr = Json::array();
            for (const IVec& z : s) arr.push_back(json_vec(z));
            j[std::to_string(h)] = std::move(arr);
        }
        if (!o.out_path.empty()) write_file(o.out_path, j.dump(2) + "\n");
        return 0;
    }

    if (widths->parsed()) {
        auto P = load_input(o);
        Json arr = Json::array();
        for (std::size_t i = 0; i < P.facets().size(); ++i) {
            std::cout << "facet " << i << ": width " << P.facet_width(i) << ", multiplicity "
                      << facet_multiplicity(P, i) << "\n";
            arr.push_back(Json{{"width", json_int(P.facet_width(i))},
                               {"multiplicity", json_int(facet_multiplicity(P, i))}});
        }
        std::cout << "width: " << P.width() << "\n";
        if (!o.out_path.empty())
            write_file(o.out_path,
                       Json{{"facets", arr}, {"width", json_int(P.width())}}.dump(2) + "\n");
        return 0;
    }

    if (jumps->parsed()) {
        auto P = load_input(o);
        require_normal(P);
        std::vector<std::pair<IVec, Int>> found;
        if (!exhaustive && cap == 0) {
            for (IVec& z : height1_jumps(P)) found.emplace_back(std::move(z), Int(1));
            std::cout << "height-1 jumps (use --exhaustive or --search-height-cap for more):\n";
        } else {
            std::vector<Int> relax = jump_height_bounds(P);
            if (!exhaustive)
                for (Int& b : relax)
                    if (Int(cap) < b) b = cap;
            candidates_in_box(P, relax, relaxed_box(P, relax), [&](const IVec& z) {
                if (is_jump(P, z).accepted) found.emplace_back(z, P.height_over(z));
                return true;
            });
        }
        Json arr = Json::array();
        for (const auto& [z, h] : found) {
            std::cout << "z=" << vec_to_string(z) << " ht=" << h << "\n";
            arr.push_back(Json{{"z", json_vec(z)}, {"height", json_int(h)}});
        }
        std::cout << found.size() << " jumps\n";
        if (!o.out_path.empty()) write_file(o.out_path, arr.dump(2) + "\n");
        return 0;
    }

    if (certify->parsed()) {
        auto P = load_input(o);
        require_normal(P);
        CertifyOptions opts;
        opts.workers = workers;
        opts.checkpoint_path = checkpoint;
        if (cap > 0) opts.height_cap = Int(cap);
        auto cert = certify_maximal(P, opts);
        std::cout << "candidates: " << cert.candidate_count << "\n";
        std::cout << "single-point extensions: " << cert.verdicts.size() << "\n";
        std::size_t accepted_count = 0;
        for (const auto& cv : cert.verdicts)
            if (cv.verdict.accepted) ++accepted_count;
        std::cout << "accepted jumps: " << accepted_count << "\n";
        std::cout << "conclusion: " << (cert.maximal ? "maximal" : "not-maximal");
        if (cert.accepted) std::cout << " (jump at " << vec_to_string(*cert.accepted) << ")";
        std::cout << "\n";
        if (cap > 0) std::cout << "note: bounded scan, heights above " << cap << " untested\n";
        if (!o.out_path.empty()) write_file(o.out_path, certificate_to_json(cert).dump(2) + "\n");
        if (!o.log_path.empty()) write_file(o.log_path, certificate_to_log(cert));
        return 0;
    }

    if (search->parsed()) {
        SearchConfig cfg;
        cfg.dim = dim;
        cfg.seed = seed;
        cfg.max_lattice_points = max_points;
        cfg.strategy = parse_strategy(strategy);
        cfg.start = parse_start_mode(start_mode);
        cfg.workers = workers;
        cfg.runs = runs;
        cfg.max_restarts = max_restarts;
        cfg.output_dir = out_dir;
        if (cap > 0) cfg.height_cap = Int(cap);
        auto colon = range.find(':');
        try {
            if (colon == std::string::npos) throw std::invalid_argument("");
            cfg.coord_lo = std::stoll(range.substr(0, colon));
            cfg.coord_hi = std::stoll(range.substr(colon + 1));
        } catch (const std::exception&) {
            throw UsageError("--range wants lo:hi with integer bounds");
        }
        if (!o.in_path.empty() || !o.gallery_name.empty()) {
            auto P = load_input(o);
            require_normal(P);
            cfg.dim = P.dim();
            cfg.fixed_start = std::move(P);
        }
        auto rep = run_search(cfg);
        std::cout << "runs: " << rep.runs_attempted << "\n";
        std::cout << "maximal polytopes found: " << rep.maximal_found << "\n";
        for (const auto& [h, n] : rep.jump_heights)
            std::cout << "jumps of height " << h << ": " << n << "\n";
        for (const auto& r : rep.runs)
            if (r.found_maximal && r.certificate)
                std::cout << "run " << r.index << ": maximal, "
                          << r.certificate->candidate_count << " candidates certified\n";
        if (!o.out_path.empty())
            write_file(o.out_path, search_report_to_json(rep).dump(2) + "\n");
        if (!o.log_path.empty()) {
            std::string log;
            for (const auto& r : rep.runs) {
                log += "run " + std::to_string(r.index) + "\n";
                for (const auto& line : r.chain) log += "  " + line + "\n";
            }
            write_file(o.log_path, log);
        }
        return 0;
    }

    if (gallery->parsed()) {
        if (o.gallery_name.empty() && o.in_path.empty()) {
            std::cout << "P4 P5 P4prime\n"
                      << "simplex:<d> cube:<d> cross:<k> sharp:<d>:<w> delta:<p>:<q>\n"
                      << "pentagon ordergap:P ordergap:Q ball:<d>:<r>\n";
            return 0;
        }
        auto P = load_input(o);
        emit(o, polytope_to_string(P, format_of(o)),
             "dim " + std::to_string(P.dim()) + ", " + std::to_string(P.vertices().size()) +
                 " vertices, " + std::to_string(lattice_point_count(P)) + " lattice points\n");
        return 0;
    }

    if (ellipsoid->parsed()) {
        EllipsoidSpec spec;
        if (!semiaxes.empty()) {
            QVec ax = parse_rat_list(semiaxes);
            QVec ctr(ax.size(), Rat(0));
            if (!center.empty()) ctr = parse_rat_list(center);
            if (ctr.size() != ax.size()) throw UsageError("--center arity mismatch");
            spec = EllipsoidSpec::axis_aligned(ax, ctr);
        } else if (!center.empty()) {
            QVec ctr = parse_rat_list(center);
            if (ctr.size() != edim) throw UsageError("--center arity mismatch");
            spec = EllipsoidSpec::axis_aligned(QVec(edim, parse_rat(radius)), ctr);
        } else {
            spec = EllipsoidSpec::ball(edim, parse_rat(radius));
        }
        auto pts = ellipsoid_lattice_points(spec);
        std::cout << pts.size() << " lattice points\n";
        auto P = ellipsoid_hull(spec);
        auto nv = is_normal(P);
        std::cout << "hull: " << P.vertices().size() << " vertices, "
                  << (nv.normal ? "normal" : "not normal") << "\n";
        std::cout << "two-point decomposition check: "
                  << (two_point_decomposition_check(spec, P) ? "pass" : "fail") << "\n";
        if (!o.out_path.empty()) write_file(o.out_path, polytope_to_string(P, format_of(o)));
        return 0;
    }

    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
