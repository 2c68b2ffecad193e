#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "doctest.h"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  std::string base = "/tmp/swclock_cli_test_" + std::to_string(counter++);
  std::string out_path = base + ".out", err_path = base + ".err";
  std::string cmd = std::string(SWCLOCK_CLI_PATH) + " " + args + " > " +
                    out_path + " 2> " + err_path;
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

}  // namespace

TEST_CASE("derive emits a design table") {
  RunResult r = run_cli("derive --mode maximal --tau 1e-8 --T 8.64e4");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("M") != std::string::npos);
  CHECK(r.out.find("7.568") != std::string::npos);  // mass near 0.076 g
  CHECK(r.err.empty());
}

TEST_CASE("derive emits JSON on request") {
  RunResult r = run_cli("derive --tau 1e-7 --n 1e7 --output json");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"mode\"") != std::string::npos);
  CHECK(r.out.find("maximal_dial") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  SUBCASE("under-determined input") {
    RunResult r = run_cli("derive --tau 1e-8");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("under-determined") != std::string::npos);
  }
  SUBCASE("unknown flag") {
    RunResult r = run_cli("derive --tau 1e-8 --no-such-flag 3");
    CHECK(r.exit_code == 2);
  }
  SUBCASE("unknown subcommand") {
    CHECK(run_cli("frobnicate").exit_code == 2);
  }
  SUBCASE("inconsistent over-determined input") {
    RunResult r = run_cli("derive --tau 1e-8 --T 8.64e4 --n 2e12");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("inconsistent") != std::string::npos);
  }
}

TEST_CASE("help exits 0") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("derive --help").exit_code == 0);
}

TEST_CASE("strict feasibility gates the exit code") {
  // all requirements hold for the microscopic-mass design
  CHECK(run_cli("check --tau 1e-7 --n 1e7 --strict").exit_code == 0);
  // the macroscopic example fails microbehavior
  RunResult r = run_cli("check --tau 1e-8 --T 8.64e4 --strict");
  CHECK(r.exit_code == 1);
  // without --strict the same report exits 0
  CHECK(run_cli("check --tau 1e-8 --T 8.64e4").exit_code == 0);
}

TEST_CASE("invert prints the requested field") {
  RunResult r = run_cli("invert --target T --n 8.64e12 --M 1e-16");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("6.538956566") != std::string::npos);
}

TEST_CASE("sweep output is byte-deterministic") {
  std::string args =
      "sweep --axis1 n=10:1e6:6 --axis2 M=1e-27:1e-16:12 --rho nuclear "
      "--output json";
  RunResult a = run_cli(args + " --workers 1");
  RunResult b = run_cli(args + " --workers 4");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("\"max_feasible_n\"") != std::string::npos);
  CHECK(a.out.find("100") != std::string::npos);

  RunResult svg1 = run_cli(
      "sweep --axis1 n=10:1e6:6 --axis2 M=1e-27:1e-16:12 --rho nuclear "
      "--output svg");
  RunResult svg2 = run_cli(
      "sweep --axis1 n=10:1e6:6 --axis2 M=1e-27:1e-16:12 --rho nuclear "
      "--output svg");
  CHECK(svg1.exit_code == 0);
  CHECK(svg1.out == svg2.out);
  CHECK(svg1.out.find("swclock region map format v1") != std::string::npos);
}

TEST_CASE("simulate is deterministic for a fixed seed") {
  std::string args = "simulate --tau 1e-7 --n 1e7 --samples 20000 --seed 9";
  RunResult a = run_cli(args);
  RunResult b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("spread") != std::string::npos);
}

TEST_CASE("constants overrides change the arithmetic") {
  // hbar rounded so hbar/c^2 = 1e-48: the mass drops to ~0.065 g
  RunResult r = run_cli(
      "derive --tau 1e-8 --T 8.64e4 --hbar 8.98740441e-28 --output json");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("0.064497") != std::string::npos);

  std::string conf = "/tmp/swclock_cli_test_constants.conf";
  {
    std::ofstream out(conf);
    out << "# rounded action constant\nhbar = 8.98740441e-28\n";
  }
  RunResult f = run_cli("derive --tau 1e-8 --T 8.64e4 --constants " + conf +
                        " --output json");
  CHECK(f.exit_code == 0);
  CHECK(f.out.find("0.064497") != std::string::npos);
  // the flag wins over the file
  RunResult both = run_cli("derive --tau 1e-8 --T 8.64e4 --constants " + conf +
                           " --hbar 1.0546e-27 --output json");
  CHECK(both.out.find("0.075682") != std::string::npos);
  std::remove(conf.c_str());

  RunResult bad = run_cli("derive --tau 1e-8 --T 8.64e4 --constants /no/such/file");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("reproduce runs the built-in cases") {
  RunResult all = run_cli("reproduce");
  CHECK(all.exit_code == 0);
  CHECK(all.out.find("wigner-1957") != std::string::npos);
  CHECK(all.out.find("nucleon-n100") != std::string::npos);

  RunResult filtered = run_cli("reproduce --case micro*");
  CHECK(filtered.exit_code == 0);
  CHECK(filtered.out.find("micro-mass") != std::string::npos);
  CHECK(filtered.out.find("wigner-1957") == std::string::npos);
}
