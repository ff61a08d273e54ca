#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>

#include "corpus.hpp"
#include "redkit/cooklevin.hpp"
#include "redkit/dpll.hpp"
#include "redkit/formats.hpp"

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const std::string tag = std::to_string(counter++);
  const std::string out_path = "cli_stdout_" + tag + ".txt";
  const std::string err_path = "cli_stderr_" + tag + ".txt";
  const std::string cmd =
      std::string(REDKIT_CLI_PATH) + " " + args + " >" + out_path + " 2>" + err_path;
  int status = std::system(cmd.c_str());
  CliResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = corpus::slurp(out_path);
  r.err = corpus::slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

std::string mpath(const std::string& name) { return corpus::machine_path(name); }

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char ch : s)
    if (ch == '\n') ++n;
  return n;
}

// Deletes the named work files when the test case ends.
struct Cleanup {
  std::vector<std::string> paths;
  explicit Cleanup(std::vector<std::string> p) : paths(std::move(p)) {}
  ~Cleanup() {
    for (const std::string& p : paths) std::remove(p.c_str());
  }
};

}  // namespace

TEST_CASE("simulate prints the trace and exits by verdict") {
  CliResult acc = run_cli("simulate " + mpath("m1") + " 1");
  CHECK(acc.code == 0);
  CHECK(count_lines(acc.out) == 2);
  CHECK(acc.out.find("=> accepted") != std::string::npos);
  CHECK(acc.out.find("state=q0") != std::string::npos);

  CliResult rej = run_cli("simulate " + mpath("m1") + " 0");
  CHECK(rej.code == 1);
  CHECK(rej.out.find("=> rejected") != std::string::npos);

  CliResult missing = run_cli("simulate no_such_file.tm 1");
  CHECK(missing.code == 3);
}

TEST_CASE("reduce writes deterministic DIMACS and varmap files") {
  Cleanup cleanup({"t_red.cnf", "t_red.map"});

  const std::string base = "reduce " + mpath("m1") + " 1 --p 2 --out t_red.cnf --varmap t_red.map";
  CliResult first = run_cli(base);
  REQUIRE(first.code == 0);
  CHECK(first.out.find("vars tableau=81") != std::string::npos);
  CHECK(first.out.find("clauses G1=") != std::string::npos);

  std::string cnf = corpus::slurp("t_red.cnf");
  std::string map = corpus::slurp("t_red.map");
  redkit::CnfInstance f = redkit::parse_dimacs(cnf);
  CHECK(f.nvars == 81);
  redkit::VarCatalog cat = redkit::parse_varmap(map);
  CHECK(cat.total() == 81);

  CliResult second = run_cli(base);
  REQUIRE(second.code == 0);
  CHECK(corpus::slurp("t_red.cnf") == cnf);
  CHECK(corpus::slurp("t_red.map") == map);
  CHECK(second.out == first.out);
}

TEST_CASE("reduce validates its arguments") {
  Cleanup cleanup({"t0.cnf", "t0.map", "t1.cnf", "t1.map"});

  CliResult zero = run_cli("reduce " + mpath("m1") + " 1 --p 0 --out t0.cnf --varmap t0.map");
  CHECK(zero.code == 2);
  CliResult toolong = run_cli("reduce " + mpath("m1") + " 101 --p 2 --out t1.cnf --varmap t1.map");
  CHECK(toolong.code == 3);
}

TEST_CASE("solve decides DIMACS files") {
  Cleanup cleanup({"t_sat.cnf", "t_sat.map", "t_uns.cnf", "t_uns.map", "t_bad.cnf"});

  REQUIRE(run_cli("reduce " + mpath("m1") + " 1 --p 2 --out t_sat.cnf --varmap t_sat.map").code == 0);
  CliResult sat = run_cli("solve t_sat.cnf");
  CHECK(sat.code == 0);
  CHECK(sat.out.rfind("s SATISFIABLE\nv ", 0) == 0);
  CHECK(sat.out.find(" 0\n") != std::string::npos);

  REQUIRE(run_cli("reduce " + mpath("m1") + " 0 --p 2 --out t_uns.cnf --varmap t_uns.map").code == 0);
  CliResult uns = run_cli("solve t_uns.cnf");
  CHECK(uns.code == 1);
  CHECK(uns.out == "s UNSATISFIABLE\n");

  std::ofstream bad("t_bad.cnf");
  bad << "p dnf oops\n";
  bad.close();
  CHECK(run_cli("solve t_bad.cnf").code == 3);
}

TEST_CASE("prove runs the full round trip") {
  CliResult yes = run_cli("prove " + mpath("m1") + " 1 --p 2");
  CHECK(yes.code == 0);
  CHECK(yes.out.find("verified: accepting computation within 2 steps") != std::string::npos);
  CHECK(yes.out.find("t=0 state=q0") != std::string::npos);

  CliResult no = run_cli("prove " + mpath("m1") + " 0 --p 2");
  CHECK(no.code == 1);
  CHECK(no.out.find("no accepting computation") != std::string::npos);

  CliResult pal = run_cli("prove " + mpath("palindrome") + " 00 --p 6");
  CHECK(pal.code == 0);
}

TEST_CASE("semigroup build writes the calculus presentation") {
  Cleanup cleanup({"t_pres.txt"});

  CliResult built = run_cli("semigroup build " + mpath("parity_fn") + " --out t_pres.txt");
  REQUIRE(built.code == 0);
  CHECK(built.out.find("generators=14 relations=19") != std::string::npos);
  redkit::Presentation parsed = redkit::parse_presentation(corpus::slurp("t_pres.txt"));
  CHECK(parsed == redkit::build_calculus(corpus::load("parity_fn")));
}

TEST_CASE("semigroup equiv prints a derivation or NOT-FOUND") {
  Cleanup cleanup({"t_eq.txt"});

  REQUIRE(run_cli("semigroup build " + mpath("parity_fn") + " --out t_eq.txt").code == 0);

  CliResult found = run_cli("semigroup equiv t_eq.txt \"0 0 v\" \"v\"");
  CHECK(found.code == 0);
  redkit::Derivation d = redkit::parse_derivation(found.out);
  CHECK(d.steps.size() == 2);
  CHECK(redkit::verify_derivation(d, redkit::build_calculus(corpus::load("parity_fn"))));

  CliResult not_found = run_cli("semigroup equiv t_eq.txt \"v\" \"1 v\" --max-len 3");
  CHECK(not_found.code == 1);
  CHECK(not_found.out.find("NOT-FOUND") != std::string::npos);
}

TEST_CASE("semigroup divides answers the q0 v probe") {
  Cleanup cleanup({"t_div.txt"});

  REQUIRE(run_cli("semigroup build " + mpath("parity_fn") + " --out t_div.txt").code == 0);

  CliResult even = run_cli("semigroup divides t_div.txt \"q1 0\"");
  CHECK(even.code == 0);
  CHECK(even.out.find("DIVISIBLE: xi = v") != std::string::npos);

  CliResult odd = run_cli("semigroup divides t_div.txt \"q1 0 1\"");
  CHECK(odd.code == 1);
  CHECK(odd.out.find("NOT-FOUND") != std::string::npos);
}

TEST_CASE("semigroup phi prints the alphabetic number") {
  Cleanup cleanup({"t_phi.txt"});

  REQUIRE(run_cli("semigroup build " + mpath("parity_fn") + " --out t_phi.txt").code == 0);
  redkit::Presentation p = redkit::build_calculus(corpus::load("parity_fn"));
  CliResult r = run_cli("semigroup phi t_phi.txt 2");
  CHECK(r.code == 0);
  CHECK(r.out == redkit::phi(2, p).to_decimal() + "\n");
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("frobnicate").code == 2);
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("semigroup").code == 2);
}
