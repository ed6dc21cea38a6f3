#pragma once

#include <atomic>
#include <fstream>
#include <mutex>

#include "latpol/io.hpp"
#include "latpol/jump.hpp"
#include "latpol/parallel.hpp"

namespace latpol {

enum class CertifyMode {
    exhaustive, // scan every candidate, report all survivors
    search      // stop at the first accepted jump (deterministically)
};

struct CertifyOptions {
    CertifyMode mode = CertifyMode::exhaustive;
    int workers = 1;               // <= 0 uses all hardware threads
    std::optional<Int> height_cap; // clamp every per-facet bound (search phase)
    std::string checkpoint_path;   // exhaustive only: JSON-lines progress file
};

struct CandidateVerdict {
    IVec z;
    JumpVerdict verdict;
};

struct MaximalityCertificate {
    std::size_t dim = 0;
    std::vector<IVec> vertices;
    std::vector<Int> facet_bounds;    // relaxation actually scanned
    std::uint64_t candidate_count = 0;
    // single-point-extension survivors in candidate (lex) order; in search
    // mode the list is cut right after the first accepted jump
    std::vector<CandidateVerdict> verdicts;
    bool maximal = false;
    std::optional<IVec> accepted;     // first accepted jump, when any
    bool exhaustive = true;           // false when a search run stopped early
};

namespace detail {

struct CertifyChunk {
    bool done = false;
    std::uint64_t candidates = 0;
    std::vector<CandidateVerdict> survivors;
    std::optional<IVec> accepted;
};

inline Json verdict_to_json(const CandidateVerdict& cv) {
    Json j;
    j["z"] = json_vec(cv.z);
    j["reason"] = to_string(cv.verdict.reason);
    if (cv.verdict.level != 0) j["level"] = json_int(cv.verdict.level);
    if (cv.verdict.witness) j["witness"] = json_vec(*cv.verdict.witness);
    return j;
}

inline CandidateVerdict verdict_from_json(const Json& j) {
    CandidateVerdict cv;
    cv.z = parse_json_vec(j.at("z"));
    std::string reason = j.at("reason").get<std::string>();
    if (reason == "accepted") {
        cv.verdict.accepted = true;
        cv.verdict.reason = JumpReason::accepted;
    } else if (reason == "extra-lattice-point") {
        cv.verdict.reason = JumpReason::extra_point;
    } else if (reason == "non-normal") {
        cv.verdict.reason = JumpReason::non_normal;
    } else {
        throw std::runtime_error("unknown verdict reason '" + reason + "'");
    }
    if (j.contains("level")) cv.verdict.level = parse_json_int(j.at("level"));
    if (j.contains("witness")) cv.verdict.witness = parse_json_vec(j.at("witness"));
    return cv;
}

inline Json checkpoint_header(const LatticePolytope& P, const std::vector<Int>& bounds) {
    Json h;
    h["type"] = "header";
    h["polytope"] = polytope_to_json(P);
    Json b = Json::array();
    for (const Int& x : bounds) b.push_back(json_int(x));
    h["bounds"] = std::move(b);
    return h;
}

} // namespace detail

// Scan all extension candidates of a normal polytope and classify each one
// that passes the single-point filter. Chunked by the first coordinate;
// results are merged in chunk order, so the outcome is independent of the
// worker count. Normality of P is assumed.
inline MaximalityCertificate certify_maximal(const LatticePolytope& P, CertifyOptions opt = {}) {
    std::vector<Int> bounds = jump_height_bounds(P);
    if (opt.height_cap) {
        if (*opt.height_cap < 1)
            throw std::invalid_argument("certify_maximal: height cap must be at least 1");
        for (Int& b : bounds) b = std::min(b, *opt.height_cap);
    }
    if (!opt.checkpoint_path.empty() && opt.mode != CertifyMode::exhaustive)
        throw std::invalid_argument("certify_maximal: checkpointing needs exhaustive mode");

    IBox box = relaxed_box(P, bounds);
    const std::int64_t n_chunks = to_int64(box.hi[0] - box.lo[0]) + 1;
    std::vector<detail::CertifyChunk> chunks(static_cast<std::size_t>(n_chunks));

    // resume from a checkpoint if one is present
    std::unique_ptr<std::ofstream> ck;
    std::mutex ck_mutex;
    if (!opt.checkpoint_path.empty()) {
        Json header = detail::checkpoint_header(P, bounds);
        bool have_file = false;
        {
            std::ifstream in(opt.checkpoint_path);
            std::string line;
            std::size_t lineno = 0;
            while (in && std::getline(in, line)) {
                ++lineno;
                if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
                Json j = Json::parse(line);
                if (lineno == 1) {
                    if (j != header)
                        throw std::runtime_error(
                            "checkpoint belongs to a different computation: " +
                            opt.checkpoint_path);
                    have_file = true;
                    continue;
                }
                std::int64_t i = j.at("chunk").get<std::int64_t>();
                if (i < 0 || i >= n_chunks)
                    throw std::runtime_error("checkpoint chunk index out of range");
                auto& ch = chunks[static_cast<std::size_t>(i)];
                ch = detail::CertifyChunk{};
                ch.done = true;
                ch.candidates = j.at("candidates").get<std::uint64_t>();
                for (const auto& sj : j.at("survivors")) {
                    CandidateVerdict cv = detail::verdict_from_json(sj);
                    if (cv.verdict.accepted) ch.accepted = cv.z;
                    ch.survivors.push_back(std::move(cv));
                }
            }
        }
        ck = std::make_unique<std::ofstream>(opt.checkpoint_path, std::ios::app);
        if (!*ck) throw std::runtime_error("cannot write " + opt.checkpoint_path);
        if (!have_file) {
            *ck << header.dump() << "\n";
            ck->flush();
        }
    }

    const bool search = opt.mode == CertifyMode::search;
    std::atomic<std::int64_t> stop_chunk{n_chunks};

    run_indexed(static_cast<std::size_t>(n_chunks), opt.workers, [&](std::size_t i) {
        auto& ch = chunks[i];
        if (ch.done) return;
        if (search && static_cast<std::int64_t>(i) > stop_chunk.load()) return;

        IBox cbox = box;
        cbox.lo[0] = box.lo[0] + Int(static_cast<std::int64_t>(i));
        cbox.hi[0] = cbox.lo[0];
        candidates_in_box(P, bounds, cbox, [&](const IVec& z) {
            ++ch.candidates;
            LatticePolytope Q = extend_by_point(P, z);
            if (!single_point_extension_check(P, z, Q, false).single) return true;
            JumpVerdict v = is_jump(P, z);
            bool accepted = v.accepted;
            ch.survivors.push_back({z, std::move(v)});
            if (accepted) {
                if (!ch.accepted) ch.accepted = z;
                if (search) {
                    std::int64_t mine = static_cast<std::int64_t>(i);
                    std::int64_t cur = stop_chunk.load();
                    while (mine < cur && !stop_chunk.compare_exchange_weak(cur, mine)) {
                    }
                    return false; // cut the chunk right after the accept
                }
            }
            return true;
        });
        ch.done = true;

        if (ck) {
            Json j;
            j["type"] = "chunk";
            j["chunk"] = static_cast<std::int64_t>(i);
            j["candidates"] = ch.candidates;
            Json sv = Json::array();
            for (const auto& cv : ch.survivors) sv.push_back(detail::verdict_to_json(cv));
            j["survivors"] = std::move(sv);
            std::lock_guard<std::mutex> lock(ck_mutex);
            *ck << j.dump() << "\n";
            ck->flush();
        }
    });

    MaximalityCertificate cert;
    cert.dim = P.dim();
    cert.vertices = P.vertices();
    cert.facet_bounds = bounds;

    std::int64_t last = n_chunks;
    if (search) {
        last = stop_chunk.load();
        // without an accept, a search run degenerates to an exhaustive one
        if (last == n_chunks)
            last = n_chunks - 1;
        else
            cert.exhaustive = false;
    } else {
        last = n_chunks - 1;
    }

    for (std::int64_t i = 0; i <= last; ++i) {
        auto& ch = chunks[static_cast<std::size_t>(i)];
        cert.candidate_count += ch.candidates;
        for (auto& cv : ch.survivors) {
            if (cv.verdict.accepted && !cert.accepted) cert.accepted = cv.z;
            cert.verdicts.push_back(std::move(cv));
        }
    }
    cert.maximal = !cert.accepted.has_value();
    return cert;
}

inline Json certificate_to_json(const MaximalityCertificate& c) {
    Json j;
    j["polytope"]["dim"] = c.dim;
    Json verts = Json::array();
    for (const IVec& v : c.vertices) verts.push_back(json_vec(v));
    j["polytope"]["vertices"] = std::move(verts);
    Json b = Json::array();
    for (const Int& x : c.facet_bounds) b.push_back(json_int(x));
    j["facet_bounds"] = std::move(b);
    j["candidate_count"] = c.candidate_count;
    j["point_filter_survivors"] = c.verdicts.size();
    j["exhaustive"] = c.exhaustive;
    Json vj = Json::array();
    for (const auto& cv : c.verdicts) vj.push_back(detail::verdict_to_json(cv));
    j["verdicts"] = std::move(vj);
    j["conclusion"] = c.maximal ? "maximal" : "not-maximal";
    if (c.accepted) j["accepted"] = json_vec(*c.accepted);
    return j;
}

inline std::string certificate_to_log(const MaximalityCertificate& c) {
    std::ostringstream os;
    os << "polytope: dim " << c.dim << ", " << c.vertices.size() << " vertices\n";
    os << "facet bounds:";
    for (const Int& b : c.facet_bounds) os << ' ' << b;
    os << "\n";
    os << "candidates: " << c.candidate_count << "\n";
    os << "survivors: " << c.verdicts.size() << "\n";
    for (const auto& cv : c.verdicts) {
        os << "candidate " << vec_to_string(cv.z) << ": " << to_string(cv.verdict.reason);
        if (cv.verdict.level != 0) os << " level=" << cv.verdict.level;
        if (cv.verdict.witness) os << " witness=" << vec_to_string(*cv.verdict.witness);
        os << "\n";
    }
    os << "conclusion: " << (c.maximal ? "maximal" : "not-maximal");
    if (c.accepted) os << " (jump at " << vec_to_string(*c.accepted) << ")";
    os << "\n";
    return os.str();
}

} // namespace latpol
