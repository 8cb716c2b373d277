#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "kcgen/encode.hpp"

using namespace kcgen;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string output;  // stdout only
};

RunResult run(const std::string& args) {
  static int counter = 0;
  fs::path out = fs::temp_directory_path() / ("kcgen_cli_out_" + std::to_string(counter++));
  std::string cmd = std::string(KCGEN_BIN) + " " + args + " > " + out.string() + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  std::ifstream in(out);
  std::ostringstream text;
  text << in.rdbuf();
  fs::remove(out);
  return {WEXITSTATUS(status), text.str()};
}

fs::path sandbox() {
  fs::path dir = fs::temp_directory_path() / "kcgen_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_CASE("generate produces a DIMACS file that passes the projection oracle") {
  fs::path dir = sandbox();
  fs::path cnf = dir / "f.cnf";
  auto r = run("generate --mode blockpw -k 1 -b 2 -n 4 --seed 5 -o " + cnf.string());
  REQUIRE(r.exit_code == 0);

  CnfFormula f = parse_dimacs(slurp(cnf));
  REQUIRE(f.provenance.matrix.has_value());
  auto xs = f.vars.x_vars();
  auto proj = solution_projection(f, xs, 1u << 16);
  auto words = LinearCode(*f.provenance.matrix).enumerate_codewords(1u << 16);
  REQUIRE(proj.rows.size() == words.size());
  for (std::size_t t = 0; t < words.size(); ++t) {
    std::uint64_t row = 0;
    for (std::size_t j = 0; j < xs.size(); ++j)
      if (words[t].get(j)) row |= std::uint64_t{1} << j;
    CHECK(std::find(proj.rows.begin(), proj.rows.end(), row) != proj.rows.end());
  }
}

TEST_CASE("generate naive from an explicit matrix reproduces the known size") {
  fs::path dir = sandbox();
  fs::path mat = dir / "a.txt";
  std::ofstream(mat) << "1 2\n11\n";
  fs::path cnf = dir / "naive.cnf";
  auto r = run("generate --mode naive --matrix " + mat.string() + " -o " + cnf.string());
  REQUIRE(r.exit_code == 0);
  CnfFormula f = parse_dimacs(slurp(cnf));
  CHECK(formula_size(f) == 17);
}

TEST_CASE("generate nd above the materialization cap fails cleanly") {
  auto r = run("generate --mode nd -k 1 -b 20 -c 32 --seed 7");
  CHECK(r.exit_code != 0);
}

TEST_CASE("count reports the model count and the oracle") {
  fs::path dir = sandbox();
  fs::path cnf = dir / "count.cnf";
  REQUIRE(run("generate --mode blockpw -k 1 -b 2 -n 4 --seed 5 -o " + cnf.string()).exit_code == 0);
  auto r = run("count " + cnf.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("models=8 oracle=8 MATCH") != std::string::npos);
}

TEST_CASE("compile output passes check") {
  fs::path dir = sandbox();
  fs::path cnf = dir / "c.cnf";
  fs::path nnf = dir / "c.nnf";
  REQUIRE(run("generate --mode blockpw -k 2 -b 1 -n 4 --seed 3 -o " + cnf.string()).exit_code == 0);
  REQUIRE(run("compile " + cnf.string() + " -o " + nnf.string()).exit_code == 0);
  auto r = run("check " + nnf.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("decomposable: yes") != std::string::npos);
}

TEST_CASE("analyze validates the width bound for blockpw instances") {
  fs::path dir = sandbox();
  fs::path cnf = dir / "k2.cnf";
  REQUIRE(run("generate --mode blockpw -k 2 -b 1 -n 4 --seed 9 -o " + cnf.string()).exit_code == 0);
  auto r = run("analyze " + cnf.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("modular pathwidth bound: 3 (validated)") != std::string::npos);
}

TEST_CASE("analyze reports equal nd across b for fixed k and c") {
  fs::path dir = sandbox();
  std::string nd_line[2];
  int t = 0;
  for (int b : {2, 3}) {
    fs::path cnf = dir / ("nd_b" + std::to_string(b) + ".cnf");
    REQUIRE(run("generate --mode nd -k 1 -b " + std::to_string(b) +
                " -c 2 --seed 4 -o " + cnf.string())
                .exit_code == 0);
    auto r = run("analyze " + cnf.string());
    REQUIRE(r.exit_code == 0);
    auto pos = r.output.find("neighborhood diversity:");
    REQUIRE(pos != std::string::npos);
    nd_line[t++] = r.output.substr(pos, r.output.find('\n', pos) - pos);
  }
  CHECK(nd_line[0] == nd_line[1]);
}

TEST_CASE("analyze handles external DIMACS without metadata") {
  fs::path dir = sandbox();
  fs::path cnf = dir / "plain.cnf";
  std::ofstream(cnf) << "p cnf 3 2\n1 -2 0\n2 3 0\n";
  auto r = run("analyze " + cnf.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("neighborhood diversity:") != std::string::npos);
  CHECK(r.output.find("decomposition: n/a") != std::string::npos);
}

TEST_CASE("experiment reports are identical across runs") {
  fs::path dir = sandbox();
  fs::path grid = dir / "grid.txt";
  std::ofstream(grid) << "mode = blockpw\nk = 1\nb = 2\nn = 4 6\nseed = 5\n";
  fs::path r1 = dir / "r1.txt", r2 = dir / "r2.txt";
  REQUIRE(run("experiment " + grid.string() + " -o " + r1.string()).exit_code == 0);
  REQUIRE(run("experiment " + grid.string() + " -o " + r2.string()).exit_code == 0);
  CHECK(slurp(r1) == slurp(r2));
  CHECK(slurp(r1).find("kcgen experiment report v1") == 0);
}

TEST_CASE("forget strips variables and keeps the circuit checkable") {
  fs::path dir = sandbox();
  fs::path cnf = dir / "fz.cnf";
  fs::path nnf = dir / "fz.nnf";
  fs::path projected = dir / "fz_x.nnf";
  REQUIRE(run("generate --mode blockpw -k 1 -b 1 -n 3 --seed 2 -o " + cnf.string()).exit_code == 0);
  REQUIRE(run("compile " + cnf.string() + " -o " + nnf.string()).exit_code == 0);
  // variables 4..6 are the accumulators of this 3-column instance
  REQUIRE(run("forget " + nnf.string() + " -o " + projected.string() +
              " --vars 4 5 6")
              .exit_code == 0);
  auto r = run("check " + projected.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("decomposable: yes") != std::string::npos);
}

TEST_CASE("rectcover finds the single-rectangle minimum") {
  fs::path dir = sandbox();
  fs::path table = dir / "eq2.txt";
  std::ofstream(table) << "table 1 2 3 4\nbits 8421\n";  // x1=y1 and x2=y2
  auto r = run("rectcover " + table.string() + " --beta 1/2");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("min cover: 1") != std::string::npos);
}
