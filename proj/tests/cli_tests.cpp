// Exercises the installed CLI binary end to end through a shell. The binary
// path arrives in SWQPD_CLI (set by CTest).

#include "swqpd/gridio.hpp"
#include "swqpd/states.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace swqpd;
namespace fs = std::filesystem;

namespace {

const char* cli_path() {
  const char* p = std::getenv("SWQPD_CLI");
  REQUIRE_MESSAGE(p != nullptr, "SWQPD_CLI must point at the swqpd binary");
  return p;
}

fs::path work_dir() {
  static int counter = 0;
  auto dir = fs::temp_directory_path() / ("swqpd_cli_" + std::to_string(counter++));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(cli_path()) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("qpd: spin-1/2 Wigner grid carries the two-term closed form") {
  const auto dir = work_dir();
  write_file(dir / "up.json", R"({"kind": "dicke", "m": "1/2"})");
  const int rc = run_cli("qpd --group su2 --j 1/2 --state " + (dir / "up.json").string() +
                         " --s 0 --s 1 --out " + dir.string());
  REQUIRE(rc == 0);

  const LoadedGrid w = load_qpd_file((dir / "qpd_s0.csv").string());
  const QpdGrid& gw = std::get<QpdGrid>(w.grid);
  const double sqrt3 = std::sqrt(3.0);
  for (int k = 0; k < gw.grid.size(); ++k) {
    const double expected = 0.5 * (1.0 + sqrt3 * std::cos(gw.grid.nodes[k].theta));
    CHECK(std::abs(gw.values[k] - expected) <= 1e-12);
  }
  // the profile extrapolates to (1+sqrt3)/2 at the pole
  CHECK(std::abs(0.5 * (1.0 + sqrt3) - 1.3660254037844386) < 1e-15);

  // Q values of a density matrix lie in [0, 1]
  const LoadedGrid q = load_qpd_file((dir / "qpd_s1.csv").string());
  const QpdGrid& gq = std::get<QpdGrid>(q.grid);
  for (int k = 0; k < gq.grid.size(); ++k) {
    CHECK(gq.values[k].real() >= -1e-12);
    CHECK(gq.values[k].real() <= 1.0 + 1e-12);
  }
  CHECK(fs::exists(dir / "qpd_run.json"));
}

TEST_CASE("qpd: maximally mixed state maps to the constant 1/(2j+1)") {
  const auto dir = work_dir();
  write_file(dir / "mixed.json",
             R"({"kind": "matrix", "matrix": [[[0.5, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.5, 0.0]]]})");
  for (const char* s : {"-1", "-0.5", "0", "0.5", "1"}) {
    REQUIRE(run_cli("qpd --group su2 --j 1/2 --state " + (dir / "mixed.json").string() + " --s " +
                    s + " --out " + dir.string()) == 0);
    const LoadedGrid g = load_qpd_file((dir / ("qpd_s" + std::string(s) + ".csv")).string());
    const QpdGrid& gg = std::get<QpdGrid>(g.grid);
    for (int k = 0; k < gg.grid.size(); ++k) CHECK(std::abs(gg.values[k] - 0.5) <= 1e-12);
  }
}

TEST_CASE("qpd: usage errors exit with 1") {
  const auto dir = work_dir();
  write_file(dir / "up.json", R"({"kind": "dicke", "m": "1/2"})");
  CHECK(run_cli("qpd --group su2 --j 1/2 --state " + (dir / "up.json").string() +
                " --s 1.5 --out " + dir.string()) == 1);
  CHECK(run_cli("qpd --group su2 --j 0 --state " + (dir / "up.json").string() + " --s 0 --out " +
                dir.string()) == 1);
  write_file(dir / "bad.json", R"({"kind": "wald"})");
  CHECK(run_cli("qpd --group su2 --j 1/2 --state " + (dir / "bad.json").string() + " --s 0 --out " +
                dir.string()) == 1);
  CHECK(run_cli("qpd --group su2 --j 1/2 --s 0") == 1);  // missing --state
}

TEST_CASE("convert: identity, W to Q, and the round trip") {
  const auto dir = work_dir();
  write_file(dir / "up.json", R"({"kind": "dicke", "m": "1/2"})");
  REQUIRE(run_cli("qpd --group su2 --j 1/2 --state " + (dir / "up.json").string() +
                  " --s 0 --s 1 --out " + dir.string()) == 0);

  // s_target == s reproduces the field
  REQUIRE(run_cli("convert --in " + (dir / "qpd_s0.csv").string() + " --s-target 0 --out-file " +
                  (dir / "same.csv").string()) == 0);
  const LoadedGrid same_doc = load_qpd_file((dir / "same.csv").string());
  const LoadedGrid w_doc = load_qpd_file((dir / "qpd_s0.csv").string());
  const QpdGrid& same = std::get<QpdGrid>(same_doc.grid);
  const QpdGrid& w = std::get<QpdGrid>(w_doc.grid);
  CHECK((same.values - w.values).cwiseAbs().maxCoeff() <= 1e-12);

  // W -> Q gives cos^2(theta/2) for spin-up, and matches the direct Q map
  REQUIRE(run_cli("convert --in " + (dir / "qpd_s0.csv").string() + " --s-target 1 --out-file " +
                  (dir / "wq.csv").string()) == 0);
  const LoadedGrid conv = load_qpd_file((dir / "wq.csv").string());
  REQUIRE(conv.manifest.s_source.has_value());
  CHECK(*conv.manifest.s_source == 0.0);
  const QpdGrid& gq = std::get<QpdGrid>(conv.grid);
  const LoadedGrid direct_doc = load_qpd_file((dir / "qpd_s1.csv").string());
  const QpdGrid& direct = std::get<QpdGrid>(direct_doc.grid);
  for (int k = 0; k < gq.grid.size(); ++k) {
    const double expected = std::pow(std::cos(0.5 * gq.grid.nodes[k].theta), 2);
    CHECK(std::abs(gq.values[k] - expected) <= 1e-10);
    CHECK(std::abs(gq.values[k] - direct.values[k]) <= 1e-10);
  }

  // Q -> P -> Q
  REQUIRE(run_cli("convert --in " + (dir / "qpd_s1.csv").string() + " --s-target -1 --out-file " +
                  (dir / "p.csv").string()) == 0);
  REQUIRE(run_cli("convert --in " + (dir / "p.csv").string() + " --s-target 1 --out-file " +
                  (dir / "q2.csv").string()) == 0);
  const LoadedGrid q2_doc = load_qpd_file((dir / "q2.csv").string());
  const QpdGrid& q2 = std::get<QpdGrid>(q2_doc.grid);
  CHECK((q2.values - direct.values).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("reconstruct: round trip of a random mixed spin-1 state") {
  const auto dir = work_dir();
  write_file(dir / "state.json", R"({"kind": "random_mixed", "seed": 99})");
  REQUIRE(run_cli("qpd --group su2 --j 1 --state " + (dir / "state.json").string() +
                  " --s 0 --out " + dir.string()) == 0);
  REQUIRE(run_cli("reconstruct --in " + (dir / "qpd_s0.csv").string() + " --out-file " +
                  (dir / "op.json").string()) == 0);
  const ComplexMatrix rec = load_operator_file((dir / "op.json").string());
  const ComplexMatrix rho =
      density_matrix_su2(parse_state_spec(R"({"kind": "random_mixed", "seed": 99})"), SpinRep(2));
  CHECK((rec - rho).cwiseAbs().maxCoeff() <= 1e-10);

  // constant grid reconstructs to the scaled identity
  write_file(dir / "mixed.json",
             R"({"kind": "matrix", "matrix": [[[0.5, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.5, 0.0]]]})");
  REQUIRE(run_cli("qpd --group su2 --j 1/2 --state " + (dir / "mixed.json").string() +
                  " --prefix flat --s 0.5 --out " + dir.string()) == 0);
  REQUIRE(run_cli("reconstruct --in " + (dir / "flat_s0.5.csv").string() + " --out-file " +
                  (dir / "flat_op.json").string()) == 0);
  const ComplexMatrix flat = load_operator_file((dir / "flat_op.json").string());
  CHECK((flat - 0.5 * ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("reconstruct: grids below the exactness threshold are refused") {
  const auto dir = work_dir();
  write_file(dir / "up.json", R"({"kind": "dicke", "m": "1/2"})");
  REQUIRE(run_cli("qpd --group su2 --j 1/2 --state " + (dir / "up.json").string() +
                  " --s 0 --out " + dir.string()) == 0);
  // claim the same samples belong to a j = 2 representation: 5 x 7 nodes is
  // below the 4j+3 x 4j+1 floor and the load must refuse it
  const fs::path manifest = dir / "qpd_s0.csv.manifest.json";
  std::string text = slurp(manifest);
  const auto pos = text.find("\"twoj\": 1");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 9, "\"twoj\": 4");
  write_file(manifest, text);
  CHECK(run_cli("reconstruct --in " + (dir / "qpd_s0.csv").string() + " --out " + dir.string()) ==
        1);
}

TEST_CASE("qpd + reconstruct on the plane: vacuum closed forms") {
  const auto dir = work_dir();
  write_file(dir / "vac.json", R"({"kind": "dicke", "n": 0})");
  REQUIRE(run_cli("qpd --group hw --nmax 40 --state " + (dir / "vac.json").string() +
                  " --s 1 --s 0 --grid-radial 48 --grid-angular 16 --umax 9 --out " +
                  dir.string()) == 0);
  const LoadedGrid q_doc = load_qpd_file((dir / "qpd_s1.csv").string());
  const PlaneQpdGrid& q = std::get<PlaneQpdGrid>(q_doc.grid);
  for (int k = 0; k < q.grid.size(); ++k) {
    const double u = std::norm(q.grid.nodes[k].alpha);
    CHECK(std::abs(q.values[k] - std::exp(-u)) <= 1e-9);
  }
  const LoadedGrid w_doc = load_qpd_file((dir / "qpd_s0.csv").string());
  const PlaneQpdGrid& w = std::get<PlaneQpdGrid>(w_doc.grid);
  for (int k = 0; k < w.grid.size(); ++k) {
    const double u = std::norm(w.grid.nodes[k].alpha);
    CHECK(std::abs(w.values[k] - 2.0 * std::exp(-2.0 * u)) <= 1e-9);
  }

  // Wigner grids invert; Q grids are refused on the truncated space
  REQUIRE(run_cli("reconstruct --in " + (dir / "qpd_s0.csv").string() + " --out-file " +
                  (dir / "vac_op.json").string()) == 0);
  const ComplexMatrix rec = load_operator_file((dir / "vac_op.json").string());
  CHECK(std::abs(rec(0, 0) - 1.0) <= 1e-6);
  CHECK(rec.topLeftCorner(6, 6).cwiseAbs().maxCoeff() <= 1.0 + 1e-6);
  CHECK(run_cli("reconstruct --in " + (dir / "qpd_s1.csv").string() + " --out " + dir.string()) ==
        1);
  // conversions are a sphere-side feature
  CHECK(run_cli("convert --in " + (dir / "qpd_s0.csv").string() + " --s-target 1 --out " +
                dir.string()) == 1);
}

TEST_CASE("verify: exit codes and reproducible reports") {
  const auto dir = work_dir();
  REQUIRE(run_cli("verify --group su2 --j 2 --trials 25 --seed 5 --report " +
                  (dir / "r1.json").string()) == 0);
  REQUIRE(run_cli("verify --group su2 --j 2 --trials 25 --seed 5 --report " +
                  (dir / "r2.json").string()) == 0);
  CHECK(slurp(dir / "r1.json") == slurp(dir / "r2.json"));  // identical bytes
  REQUIRE(run_cli("verify --group su2 --j 2 --trials 25 --seed 6 --report " +
                  (dir / "r3.json").string()) == 0);
  CHECK(slurp(dir / "r1.json") != slurp(dir / "r3.json"));

  CHECK(run_cli("verify --group su2 --j 2 --trials 0") == 1);
  CHECK(run_cli("verify --group nope --j 2") == 1);
  CHECK(run_cli("verify --group su2 --j 2 --s 1.5") == 1);
}

TEST_CASE("verify: plane suite passes at its truncation-adjusted tolerances") {
  const auto dir = work_dir();
  CHECK(run_cli("verify --group hw --nmax 60 --trials 3 --report " + (dir / "hw.json").string()) ==
        0);
}

TEST_CASE("qpd honors SWQPD_OUT and custom grid sizes") {
  const auto dir = work_dir();
  write_file(dir / "up.json", R"({"kind": "dicke", "m": "1/2"})");
  const std::string cmd = "SWQPD_OUT=" + dir.string() + " " + cli_path() +
                          " qpd --group su2 --j 1/2 --state " + (dir / "up.json").string() +
                          " --s 0 --grid-theta 9 --grid-phi 9 >/dev/null 2>&1";
  REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  const LoadedGrid g = load_qpd_file((dir / "qpd_s0.csv").string());
  CHECK(std::get<QpdGrid>(g.grid).grid.size() == 81);
  CHECK(g.manifest.n_a == 9);
  // below the exactness floor is refused
  CHECK(run_cli("qpd --group su2 --j 1/2 --state " + (dir / "up.json").string() +
                " --s 0 --grid-theta 4 --out " + dir.string()) == 1);
}
