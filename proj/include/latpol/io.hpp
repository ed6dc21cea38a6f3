#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "latpol/polytope.hpp"

namespace latpol {

using Json = nlohmann::json;

// Integers are emitted as JSON numbers when they fit in 64 bits and as
// decimal strings otherwise; both forms are accepted when reading.
inline Json json_int(const Int& x) {
    if (fits_int64(x)) return Json(to_int64(x));
    return Json(int_to_string(x));
}

inline Int parse_json_int(const Json& j) {
    if (j.is_number_integer()) return Int(j.get<std::int64_t>());
    if (j.is_string()) return Int(j.get<std::string>());
    throw std::runtime_error("expected an integer or a decimal string");
}

inline Json json_vec(const IVec& v) {
    Json arr = Json::array();
    for (const Int& x : v) arr.push_back(json_int(x));
    return arr;
}

inline IVec parse_json_vec(const Json& j) {
    if (!j.is_array()) throw std::runtime_error("expected an array of integers");
    IVec v;
    v.reserve(j.size());
    for (const auto& e : j) v.push_back(parse_json_int(e));
    return v;
}

// Plain text polytope format:
//
//   dim 3
//   vertices 4
//   0 0 0
//   1 0 0
//   0 1 0
//   0 0 1
//
// Lines starting with '#' and blank lines are ignored when reading.
inline void write_polytope_text(std::ostream& os, const LatticePolytope& P) {
    os << "dim " << P.dim() << "\n";
    os << "vertices " << P.vertices().size() << "\n";
    for (const IVec& v : P.vertices()) {
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (j) os << ' ';
            os << v[j];
        }
        os << "\n";
    }
}

inline std::string polytope_to_text(const LatticePolytope& P) {
    std::ostringstream os;
    write_polytope_text(os, P);
    return os.str();
}

namespace detail {

inline bool next_content_line(std::istream& is, std::string& line, std::size_t& lineno) {
    while (std::getline(is, line)) {
        ++lineno;
        std::size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos) continue;
        if (line[pos] == '#') continue;
        return true;
    }
    return false;
}

[[noreturn]] inline void parse_fail(std::size_t lineno, const std::string& what) {
    throw std::runtime_error("line " + std::to_string(lineno) + ": " + what);
}

} // namespace detail

inline LatticePolytope read_polytope_text(std::istream& is) {
    std::string line;
    std::size_t lineno = 0;

    auto read_keyword = [&](const char* key) -> long long {
        if (!detail::next_content_line(is, line, lineno))
            detail::parse_fail(lineno + 1, std::string("expected '") + key + " <n>'");
        std::istringstream ls(line);
        std::string word;
        long long value = -1;
        if (!(ls >> word >> value) || word != key || value < 0)
            detail::parse_fail(lineno, std::string("expected '") + key + " <n>'");
        std::string rest;
        if (ls >> rest) detail::parse_fail(lineno, "trailing tokens after '" + word + "'");
        return value;
    };

    long long d = read_keyword("dim");
    long long n = read_keyword("vertices");
    if (d < 1) detail::parse_fail(lineno, "dimension must be at least 1");
    if (n < 1) detail::parse_fail(lineno, "vertex count must be at least 1");

    std::vector<IVec> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) {
        if (!detail::next_content_line(is, line, lineno))
            detail::parse_fail(lineno + 1, "expected " + std::to_string(n) + " vertex rows, got " +
                                               std::to_string(i));
        std::istringstream ls(line);
        IVec v;
        std::string tok;
        while (ls >> tok) {
            try {
                v.push_back(Int(tok));
            } catch (const std::exception&) {
                detail::parse_fail(lineno, "bad integer '" + tok + "'");
            }
        }
        if (v.size() != static_cast<std::size_t>(d))
            detail::parse_fail(lineno, "expected " + std::to_string(d) + " coordinates, got " +
                                           std::to_string(v.size()));
        pts.push_back(std::move(v));
    }
    if (detail::next_content_line(is, line, lineno))
        detail::parse_fail(lineno, "unexpected content after the vertex rows");
    return convex_hull(std::move(pts));
}

inline Json polytope_to_json(const LatticePolytope& P) {
    Json j;
    j["dim"] = P.dim();
    Json verts = Json::array();
    for (const IVec& v : P.vertices()) verts.push_back(json_vec(v));
    j["vertices"] = std::move(verts);
    return j;
}

inline LatticePolytope polytope_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("vertices"))
        throw std::runtime_error("polytope JSON needs 'dim' and 'vertices'");
    std::size_t d = j.at("dim").get<std::size_t>();
    std::vector<IVec> pts;
    for (const auto& row : j.at("vertices")) {
        IVec v = parse_json_vec(row);
        if (v.size() != d) throw std::runtime_error("vertex arity does not match 'dim'");
        pts.push_back(std::move(v));
    }
    return convex_hull(std::move(pts));
}

enum class PolytopeFormat { text, json };

inline std::string polytope_to_string(const LatticePolytope& P, PolytopeFormat fmt) {
    if (fmt == PolytopeFormat::text) return polytope_to_text(P);
    return polytope_to_json(P).dump(2) + "\n";
}

inline LatticePolytope polytope_from_string(const std::string& s, PolytopeFormat fmt) {
    if (fmt == PolytopeFormat::text) {
        std::istringstream is(s);
        return read_polytope_text(is);
    }
    return polytope_from_json(Json::parse(s));
}

// Auto-detect: JSON input starts with '{'.
inline LatticePolytope polytope_from_string(const std::string& s) {
    std::size_t pos = s.find_first_not_of(" \t\r\n");
    if (pos != std::string::npos && s[pos] == '{')
        return polytope_from_string(s, PolytopeFormat::json);
    return polytope_from_string(s, PolytopeFormat::text);
}

inline std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << is.rdbuf();
    return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << content;
}

inline LatticePolytope load_polytope(const std::string& path) {
    return polytope_from_string(read_file(path));
}

} // namespace latpol
