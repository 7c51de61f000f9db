#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

// End-to-end checks against the installed command line binary.

namespace {

std::string fixture(const std::string& name) {
  return std::string(CONEDET_FIXTURE_DIR) + "/" + name;
}

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string out_file = "cli_test_stdout.txt";
  const std::string cmd =
      std::string(CONEDET_CLI_PATH) + " " + args + " > " + out_file + " 2>&1";
  const int rc = std::system(cmd.c_str());
  RunResult res;
  res.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  std::ifstream in(out_file);
  std::stringstream ss;
  ss << in.rdbuf();
  res.out = ss.str();
  std::remove(out_file.c_str());
  return res;
}

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(run("--help").exit_code == 0);
  CHECK(run("definitely-not-a-subcommand").exit_code == 2);
  CHECK(run("det").exit_code != 0);  // needs --surface or --metric
}

TEST_CASE("eta value on the command line") {
  RunResult r = run("eta --sigma 0,1");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("0.768225422326") != std::string::npos);
}

TEST_CASE("surface info reports the L-shape") {
  RunResult r = run("surface info --surface " + fixture("lshape.json"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"genus\": 2") != std::string::npos);
}

TEST_CASE("cone kernel evaluation") {
  RunResult r = run("cone-kernel --beta 6.283185307179586 --r 1 --theta 0.3 "
                    "--rho 1 --psi 0.3 --t 1");
  CHECK(r.exit_code == 0);
  // coincident points at t=1 on the plane: 1/(4 pi)
  CHECK(r.out.find("0.0795774715459") != std::string::npos);
}

TEST_CASE("verify cone-defect exits zero and reports pass") {
  RunResult r = run("verify cone-defect --beta 12.566370614359172 --t 0.01 "
                    "--radius 1");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"overall_pass\": true") != std::string::npos);
}

TEST_CASE("spectrum CSV header and determinism of det output") {
  const std::string csv = "cli_test_spectrum.csv";
  RunResult r = run("spectrum --surface " + fixture("torus_unit.json") +
                    " --levels 3 --count 10 --out " + csv);
  CHECK(r.exit_code == 0);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "index,eigenvalue,error_estimate");
  std::remove(csv.c_str());

  const std::string det_args = "det --surface " + fixture("torus_unit.json") +
                               " --levels 3 --count 60";
  RunResult a = run(det_args);
  RunResult b = run(det_args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);  // byte identical
  CHECK(a.out.find("\"log_det\"") != std::string::npos);
}

TEST_CASE("verify three-polyhedra on metric files") {
  RunResult r = run("verify three-polyhedra --l " + fixture("metric_l.json") +
                    " --m " + fixture("metric_m.json") + " --n " +
                    fixture("metric_n.json"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"overall_pass\": true") != std::string::npos);
}

TEST_CASE("failing verification exits with code 1") {
  // beta = 4 pi defect with an absurdly small tolerance cannot pass at the
  // level of machine noise; use a bad radius/t pair instead: t > R^2/20
  RunResult r = run("verify cone-defect --beta 12.566370614359172 --t 0.2 "
                    "--radius 1");
  CHECK(r.exit_code == 1);
}
