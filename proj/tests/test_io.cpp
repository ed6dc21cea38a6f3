#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "latpol/gallery.hpp"
#include "latpol/io.hpp"

using namespace latpol;

namespace {

std::vector<LatticePolytope> fixtures() {
    return {
        gallery_polytope("cube:3"),     gallery_polytope("simplex:4"),
        gallery_polytope("pentagon"),   gallery_polytope("cross:2"),
        gallery_polytope("sharp:3:2"),  gallery_polytope("P4prime"),
    };
}

} // namespace

TEST_CASE("text format round-trips") {
    for (const auto& P : fixtures()) {
        std::string text = polytope_to_text(P);
        auto Q = polytope_from_string(text, PolytopeFormat::text);
        CHECK(Q.vertices() == P.vertices());
        CHECK(polytope_to_text(Q) == text); // canonical files rewrite byte-identically
    }
}

TEST_CASE("json format round-trips") {
    for (const auto& P : fixtures()) {
        std::string js = polytope_to_string(P, PolytopeFormat::json);
        auto Q = polytope_from_string(js, PolytopeFormat::json);
        CHECK(Q.vertices() == P.vertices());
        CHECK(polytope_to_string(Q, PolytopeFormat::json) == js);
    }
}

TEST_CASE("formats agree and are auto-detected") {
    for (const auto& P : fixtures()) {
        auto from_text = polytope_from_string(polytope_to_text(P));
        auto from_json = polytope_from_string(polytope_to_string(P, PolytopeFormat::json));
        CHECK(from_text.vertices() == from_json.vertices());
    }
}

TEST_CASE("text reader tolerates comments and blank lines") {
    std::string text = "# a polytope\n\ndim 2\n  # indented comment\nvertices 3\n0 0\n1 0\n\n0 1\n";
    auto P = polytope_from_string(text, PolytopeFormat::text);
    CHECK(P.dim() == 2);
    CHECK(P.vertices().size() == 3);
}

TEST_CASE("parse errors carry line numbers") {
    auto fails_with = [](const std::string& text, const std::string& needle) {
        try {
            polytope_from_string(text, PolytopeFormat::text);
            FAIL("expected a parse error for: " << text);
        } catch (const std::runtime_error& e) {
            INFO(e.what());
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    fails_with("dim 2\nvertices 2\n0 0\n1\n", "line 4: expected 2 coordinates, got 1");
    fails_with("dim 2\nvertices 2\n0 0\n1 x\n", "line 4: bad integer 'x'");
    fails_with("dimension 2\nvertices 1\n0 0\n", "line 1: expected 'dim <n>'");
    fails_with("dim 2\npoints 1\n0 0\n", "line 2: expected 'vertices <n>'");
    fails_with("dim 2\nvertices 3\n0 0\n1 0\n", "line 5: expected 3 vertex rows, got 2");
    fails_with("dim 2\nvertices 1\n0 0\n7 7\n", "line 4: unexpected content");
    fails_with("dim 0\nvertices 1\n\n", "dimension must be at least 1");
}

TEST_CASE("malformed json is rejected") {
    CHECK_THROWS(polytope_from_string("{\"dim\": 2}", PolytopeFormat::json));
    CHECK_THROWS(polytope_from_string("{\"dim\": 2, \"vertices\": [[\"0\"],[\"1\"]]}",
                                      PolytopeFormat::json));
    CHECK_THROWS(polytope_from_string("not json at all", PolytopeFormat::json));
}

// The remaining cases drive the installed command-line binary, which the build
// places next to this test executable.

namespace {

struct CliResult {
    int code = -1;
    std::string out;
};

CliResult cli(const std::string& args) {
    std::string out_path = "test_io_cli_out.tmp";
    int status = std::system(("./latpol " + args + " >" + out_path + " 2>&1").c_str());
    CliResult r;
#ifdef WEXITSTATUS
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
#else
    r.code = status;
#endif
    r.out = read_file(out_path);
    std::remove(out_path.c_str());
    return r;
}

} // namespace

TEST_CASE("cli reports and exports") {
    auto r = cli("normal --gallery P4");
    CHECK(r.code == 0);
    CHECK(r.out == "normal, 41 lattice points\n");

    r = cli("gallery --gallery cube:2 --out test_io_square.poly");
    REQUIRE(r.code == 0);
    auto P = load_polytope("test_io_square.poly");
    CHECK(P.vertices().size() == 4);

    r = cli("jumps --in test_io_square.poly");
    CHECK(r.code == 0);
    CHECK(r.out.find("12 jumps") != std::string::npos);
    CHECK(r.out.find("z=(-1,-1) ht=1") != std::string::npos);

    r = cli("points --gallery simplex:2");
    CHECK(r.code == 0);
    CHECK(r.out == "(0,0)\n(0,1)\n(1,0)\n");

    r = cli("hull --in test_io_square.poly --format json");
    CHECK(r.code == 0);
    CHECK(polytope_from_string(r.out, PolytopeFormat::json).vertices() == P.vertices());

    r = cli("certify-max --gallery cube:2 --out test_io_cert.json");
    CHECK(r.code == 0);
    CHECK(r.out.find("conclusion: not-maximal") != std::string::npos);
    auto cert = Json::parse(read_file("test_io_cert.json"));
    CHECK(cert["candidate_count"] == 12);
    CHECK(cert["conclusion"] == "not-maximal");

    r = cli("search --dim 2 --seed 3 --max-points 8 --runs 1 --max-restarts 1 "
            "--out test_io_report.json");
    CHECK(r.code == 0);
    CHECK(r.out.find("maximal polytopes found: 0") != std::string::npos);
    auto rep = Json::parse(read_file("test_io_report.json"));
    CHECK(rep["runs_attempted"] == 1);

    r = cli("ellipsoid --dim 3 --radius 2");
    CHECK(r.code == 0);
    CHECK(r.out.find("33 lattice points") != std::string::npos);
    CHECK(r.out.find("two-point decomposition check: pass") != std::string::npos);

    std::remove("test_io_square.poly");
    std::remove("test_io_cert.json");
    std::remove("test_io_report.json");
}

TEST_CASE("cli exit codes") {
    CHECK(cli("").code == 2);                         // missing verb
    CHECK(cli("frobnicate").code == 2);               // unknown verb
    CHECK(cli("normal").code == 2);                   // no input selected
    CHECK(cli("normal --gallery P4 --bogus").code == 2);
    CHECK(cli("normal --gallery P4 --in x.poly").code == 2); // conflicting inputs
    CHECK(cli("strata --gallery cube:2 --up-to 0").code == 2);
    CHECK(cli("ellipsoid --radius x").code == 2);
    CHECK(cli("search --range 1-5").code == 2);

    CHECK(cli("normal --gallery nosuchname").code == 1);
    CHECK(cli("normal --in test_io_missing.poly").code == 1);
    CHECK(cli("jumps --gallery delta:3:2").code == 1); // jump theory needs a normal start

    write_file("test_io_flat.poly", "dim 2\nvertices 2\n0 0\n1 1\n");
    auto r = cli("hull --in test_io_flat.poly");
    CHECK(r.code == 1); // dimension deficiency
    CHECK(r.out.find("error:") != std::string::npos);
    std::remove("test_io_flat.poly");

    write_file("test_io_bad.poly", "dim 2\nvertices 2\n0 0\n1 q\n");
    r = cli("points --in test_io_bad.poly");
    CHECK(r.code == 1);
    CHECK(r.out.find("line 4") != std::string::npos);
    std::remove("test_io_bad.poly");
}
