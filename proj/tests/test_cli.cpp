#include "mmj/io.hpp"
#include "mmj/mmj_exact.hpp"
#include "support/fixtures.hpp"
#include "support/tempdir.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace mmj;
using namespace mmj::testing;
using json = nlohmann::json;

namespace {

struct Run {
    int status = 0;
    std::string out;
    std::string err;
};

Run run_cli(const TempDir& dir, const std::string& args, const std::string& env = "") {
    const auto out = dir / "stdout.txt";
    const auto err = dir / "stderr.txt";
    const std::string cmd = "cd '" + dir.path().string() + "' && " + env + " '" MMJ_CLI_PATH "' " + args + " > '" +
                            out.string() + "' 2> '" + err.string() + "'";
    const int raw = std::system(cmd.c_str());
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, io::read_file(out), io::read_file(err)};
}

void write_text(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

void write_line_points(const std::filesystem::path& p) {
    std::ostringstream s;
    for (int i = 0; i < 20; ++i) s << i * 0.1 << ",0\n";
    for (int i = 0; i < 20; ++i) s << 10 + i * 0.1 << ",0\n";
    write_text(p, s.str());
}

} // namespace

TEST_CASE("matrix command on the worked example") {
    TempDir dir;
    io::write_matrix_csv(dir / "f1.csv", fixture_f1().values());
    const auto r = run_cli(dir, "matrix --engine mst --points f1.csv --metric precomputed --out M.csv");
    REQUIRE(r.status == 0);
    const auto summary = json::parse(r.out);
    CHECK(summary["engine"] == "mst");
    CHECK(summary["n"] == 4);
    CHECK(io::read_matrix_csv(dir / "M.csv") == mmj_brute_force(fixture_f1()).values());
    CHECK(io::read_matrix_metadata(dir / "M.meta.json").engine == "mst");
}

TEST_CASE("matrix output round-trips bit for bit") {
    TempDir dir;
    write_text(dir / "p.csv", "0.1,0.7\n0.3333333333333333,0.2\n0.9,0.45\n0.12,0.05\n");
    REQUIRE(run_cli(dir, "matrix --points p.csv --out A.csv").status == 0);
    REQUIRE(run_cli(dir, "matrix --points p.csv --engine recursion --out B.csv").status == 0);
    const auto a = io::read_matrix_csv(dir / "A.csv");
    CHECK(a == io::read_matrix_csv(dir / "B.csv"));
    io::write_matrix_csv(dir / "C.csv", a);
    CHECK(io::read_file(dir / "A.csv") == io::read_file(dir / "C.csv"));
}

TEST_CASE("directed matrices default to the recursion engine") {
    TempDir dir;
    write_text(dir / "d.csv", "0,1,9\n9,0,1\n1,9,0\n");
    const auto r = run_cli(dir, "matrix --matrix d.csv --directed --out M.csv");
    REQUIRE(r.status == 0);
    CHECK(json::parse(r.out)["engine"] == "recursion");
    CHECK(io::read_matrix_csv(dir / "M.csv")(0, 2) == 1.0);
    CHECK(run_cli(dir, "matrix --matrix d.csv --directed --engine mst --out M.csv").status != 0);
}

TEST_CASE("widest command") {
    TempDir dir;
    write_text(dir / "g.csv", "#n=3\nu,v,capacity\n0,1,5\n1,2,4\n0,2,1\n");
    const auto r = run_cli(dir, "widest --graph g.csv --directed --pair 0,2 --out W.csv");
    REQUIRE(r.status == 0);
    CHECK(json::parse(r.out)["capacity"] == "4");
    const auto w = io::read_matrix_csv(dir / "W.csv");
    CHECK(w(0, 2) == 4.0);
    CHECK(std::isinf(w(1, 1)));
}

TEST_CASE("cluster, score, sweep and predict") {
    TempDir dir;
    write_line_points(dir / "p.csv");
    auto r = run_cli(dir, "cluster --points p.csv --k 2 --seed 1 --out l.csv --report rep.json --model-out m.json");
    REQUIRE(r.status == 0);
    const auto labels = io::read_labels_csv(dir / "l.csv");
    CHECK(labels[0] == labels[19]);
    CHECK(labels[0] != labels[20]);
    CHECK(json::parse(io::read_file(dir / "rep.json"))["k"] == 2);

    r = run_cli(dir, "score --points p.csv --labels l.csv --index mmj_sc");
    REQUIRE(r.status == 0);
    CHECK(json::parse(r.out)["value"].get<double>() > 0.9);

    r = run_cli(dir, "sweep --points p.csv --k 2..4 --seed 1 --out s.csv");
    REQUIRE(r.status == 0);
    CHECK(json::parse(r.out)["best_k"] == 2);
    CHECK(io::read_file(dir / "s.csv").rfind("k,value\n2,", 0) == 0);

    write_text(dir / "q.csv", "0.5,0\n9.5,0\n");
    r = run_cli(dir, "predict --model m.json --points q.csv --out pred.csv");
    REQUIRE(r.status == 0);
    CHECK(io::read_file(dir / "pred.csv") ==
          "index,label\n0," + std::to_string(labels[0]) + "\n1," + std::to_string(labels[20]) + "\n");

    r = run_cli(dir, "predict --model m.json --grid 5x3 --box 0,12,-1,1 --out grid.csv");
    REQUIRE(r.status == 0);
    CHECK(json::parse(r.out)["queries"] == 15);
}

TEST_CASE("seeded commands are deterministic") {
    TempDir dir;
    write_line_points(dir / "p.csv");
    REQUIRE(run_cli(dir, "matrix --points p.csv --engine sample --seed 4 --paths 3 --out A.csv").status == 0);
    REQUIRE(run_cli(dir, "matrix --points p.csv --engine sample --seed 4 --paths 3 --out B.csv").status == 0);
    CHECK(io::read_file(dir / "A.csv") == io::read_file(dir / "B.csv"));
}

TEST_CASE("compare-engines reports equality and sampling error") {
    TempDir dir;
    write_line_points(dir / "p.csv");
    auto r = run_cli(dir, "compare-engines --points p.csv --seed 2");
    REQUIRE(r.status == 0);
    auto s = json::parse(r.out);
    CHECK(s["recursion_equals_mst"] == true);
    CHECK(s["sample"]["mode"] == "full");
    CHECK(s["sample"]["max_overestimate"].get<double>() >= 0.0);

    r = run_cli(dir, "compare-engines --points p.csv --seed 2 --sample-limit 10 --sample-pairs 50");
    REQUIRE(r.status == 0);
    CHECK(json::parse(r.out)["sample"]["mode"] == "pairs");
}

TEST_CASE("errors exit nonzero with a diagnostic") {
    TempDir dir;
    write_text(dir / "bad.csv", "1,2\n3,x\n");
    auto r = run_cli(dir, "matrix --points bad.csv --out M.csv");
    CHECK(r.status != 0);
    CHECK(r.err.find("line 2") != std::string::npos);

    write_text(dir / "rect.csv", "0,1,2\n1,0,3\n");
    r = run_cli(dir, "matrix --matrix rect.csv --out M.csv");
    CHECK(r.status != 0);
    CHECK(r.err.find("2x3") != std::string::npos);

    write_line_points(dir / "p.csv");
    r = run_cli(dir, "cluster --points p.csv --k 2 --out l.csv", "CI=1");
    CHECK(r.status != 0);
    CHECK(r.err.find("--seed") != std::string::npos);

    io::write_matrix_csv(dir / "big.csv", Matrix::square(11));
    r = run_cli(dir, "matrix --matrix big.csv --engine brute --out M.csv");
    CHECK(r.status != 0);
    CHECK_FALSE(std::filesystem::exists(dir / "M.csv"));
}
