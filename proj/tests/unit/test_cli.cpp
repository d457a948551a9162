#include <doctest.h>

#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "corpus.hpp"

using namespace fabkit;
using namespace fabkit::testing;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

bool has(const std::string& text, const std::string& line) { return text.find(line + "\n") != std::string::npos; }

}  // namespace

TEST_CASE("analyze flags closed components") {
    auto r = run({"analyze", corpus_path("chainmail.cell")});
    CHECK(r.code == cli::Ok);
    CHECK(has(r.out, "closed: yes"));
    CHECK(has(r.out, "layers: undefined (closed components)"));
    CHECK(has(r.out, "components: 3"));
}

TEST_CASE("analyze reports strips and layers") {
    auto w = run({"analyze", corpus_path("warpchain.cell")});
    CHECK(w.code == cli::Ok);
    CHECK(w.out.find("strip: yes") != std::string::npos);
    auto j = run({"analyze", corpus_path("jersey_face.cell"), corpus_path("jersey_two_layer.cell")});
    CHECK(has(j.out, "layers: 1"));
    CHECK(has(j.out, "layers: 2"));
    CHECK(has(j.out, "strip: no (depends on x)"));
    auto tw = run({"analyze", corpus_path("twill.cell")});
    CHECK(tw.code == cli::Ok);
    CHECK(has(tw.out, "layers: not computed (polynomial too large to factor)"));
    auto e = run({"analyze", corpus_path("empty.cell")});
    CHECK(has(e.out, "delta: 1"));
}

TEST_CASE("compare") {
    auto yes = run({"compare", corpus_path("jersey_face.cell"), corpus_path("jersey_skew.cell"), "--bound", "3"});
    CHECK(yes.code == cli::Ok);
    CHECK(has(yes.out, "witness: p=1 q=0 r=1 s=1"));
    auto no = run({"compare", corpus_path("jersey_face.cell"), corpus_path("plainweave.cell"), "--bound", "3"});
    CHECK(no.code == cli::NoWitness);
    CHECK(has(no.out, "witness: none with entries bounded by 3"));
    CHECK(has(no.out, "reflected: none"));
}

TEST_CASE("data, cover, vassiliev and glue") {
    auto d = run({"data", corpus_path("plainweave_min.cell"), "--map", "2,1,0,1"});
    CHECK(d.code == cli::Ok);
    CHECK(d.out.substr(0, 4) == "-1  ");
    auto t = run({"data", corpus_path("jersey_face.cell"), "--triples"});
    CHECK(t.out.find("(1/2, 1, s^-1 - s^-3)") != std::string::npos);
    auto c = run({"cover", corpus_path("jersey_face.cell"), "--v", "2"});
    CHECK(c.code == cli::Ok);
    CHECK(c.out.substr(0, 9) == "W = V^2\nU");
    auto v = run({"vassiliev", corpus_path("jersey_face.cell"), "--degree", "2"});
    CHECK(v.code == cli::Ok);
    CHECK(v.out.find("a_2 = ") != std::string::npos);
    auto g = run({"glue", corpus_path("jersey_face.cell"), corpus_path("jersey_face.cell")});
    CHECK(has(g.out, "yarns: t t'"));
    CHECK(has(g.out, "layers: 2"));
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == cli::BadInput);
    CHECK(run({"analyze"}).code == cli::BadInput);
    CHECK(run({"frobnicate", "x"}).code == cli::BadInput);
    CHECK(run({"cover", corpus_path("jersey_face.cell")}).code == cli::BadInput);
    CHECK(run({"analyze", corpus_path("no_such_file.cell")}).code == cli::BadInput);
    CHECK(run({"vassiliev", corpus_path("plainweave.cell")}).code == cli::BadInput);
    CHECK(run({"--help"}).code == cli::Ok);

    const std::string bad = std::string(FABKIT_BUILD_DIR) + "/bad_cross.cell";
    std::ofstream(bad) << "fabcell 1\nyarn t a1\ncross +1 a1\n";
    auto p = run({"analyze", bad});
    CHECK(p.code == cli::BadInput);
    CHECK(p.err.find("line 3") != std::string::npos);

    // Structural problems surface while reading the file.
    const std::string unmatched = std::string(FABKIT_BUILD_DIR) + "/unmatched.cell";
    std::ofstream(unmatched) << "fabcell 1\nyarn t a1\nedge L 0 a1 in\n";
    CHECK(run({"analyze", unmatched}).code == cli::BadInput);

    // A well-formed cell whose crossings cannot be drawn in the plane.
    const std::string twisted = std::string(FABKIT_BUILD_DIR) + "/nonplanar.cell";
    std::ofstream(twisted) << "fabcell 1\nyarn t a1 a2\ncross +1 a1 a2 a1 a2\n";
    auto k = run({"analyze", twisted});
    CHECK(k.code == cli::BadKernel);
    CHECK(k.err.find("planar") != std::string::npos);
}

TEST_CASE("output is a function of the input") {
    for (const char* f : {"leno.cell", "garter.cell", "fishnet.cell"}) {
        auto a = run({"analyze", corpus_path(f)});
        auto b = run({"analyze", corpus_path(f)});
        CHECK(a.out == b.out);
    }
}
