#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

// Populated by CMake with the built binary's location.
const std::string kCli = CTSIM_CLI_PATH;

struct RunResult {
  int exit_code;
  std::string output;  // stdout + stderr combined
};

RunResult run(const std::string& args) {
  const std::string cmd = kCli + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof(buf), pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string temp_path(const std::string& name) {
  return std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") + "/" + name;
}

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("selftest passes") {
  const RunResult r = run("selftest");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("FAIL") == std::string::npos);
  CHECK(r.output.find("PASS five-level |g,0,0> -> |g,0,1>") != std::string::npos);
}

TEST_CASE("help exits 0, unknown flags and subcommands exit 2") {
  CHECK(run("--help").exit_code == 0);
  CHECK(run("transfer --no-such-flag").exit_code == 2);
  CHECK(run("frobnicate").exit_code == 2);
  CHECK(run("").exit_code == 2);  // a subcommand is required
}

TEST_CASE("ideal transfer prints the expected final state") {
  const RunResult r = run("transfer --input gp");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("|g,1L,0R>") != std::string::npos);
  CHECK(r.output.find("fidelity vs ideal: 1") != std::string::npos);
}

TEST_CASE("dissipative transfer reports a sub-unit norm") {
  const RunResult r = run("transfer --input + --gamma 0.05 --kappa 0.05");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("norm 0.93") != std::string::npos);
}

TEST_CASE("transfer rejects an unknown input state") {
  CHECK(run("transfer --input bogus").exit_code == 2);
}

TEST_CASE("swap4 works ideally and has no dissipation flags") {
  const RunResult ok = run("swap4 --input gp");
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("|g,1L,0R>") != std::string::npos);
  // --gamma is not an option of swap4, so parsing fails
  CHECK(run("swap4 --gamma 0.05").exit_code == 2);
}

TEST_CASE("register transfer succeeds for chains of both protocols") {
  const RunResult five = run("register --n 2 --graph chain --protocol five");
  CHECK(five.exit_code == 0);
  CHECK(five.output.find("fidelity 1") != std::string::npos);
  const RunResult four = run("register --n 2 --graph chain --protocol four");
  CHECK(four.exit_code == 0);
}

TEST_CASE("register accepts an edge-list file and validates it") {
  const std::string path = temp_path("ctsim_cli_graph.txt");
  {
    std::ofstream os(path);
    os << "3\n0 1\n1 2\n";
  }
  CHECK(run("register --n 3 --graph " + path).exit_code == 0);
  CHECK(run("register --n 2 --graph " + path).exit_code == 2);  // count mismatch
  CHECK(run("register --n 3 --graph /no/such/file").exit_code == 2);
  std::remove(path.c_str());
}

TEST_CASE("sweep emits a CSV table on stdout") {
  const RunResult r = run("sweep --gamma 0,0.1 --kappa 0.05");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("gamma_over_h,kappa_over_h,s,fidelity\n") != std::string::npos);
  // two gamma values x one kappa -> 2 data rows + header
  int lines = 0;
  for (char c : r.output)
    if (c == '\n') ++lines;
  CHECK(lines == 3);
}

TEST_CASE("sweep output files are byte-identical across reruns") {
  const std::string p1 = temp_path("ctsim_sweep_a.csv");
  const std::string p2 = temp_path("ctsim_sweep_b.csv");
  CHECK(run("sweep --gamma 0:0.2:3 --kappa 0.01,0.05 --out " + p1).exit_code == 0);
  CHECK(run("sweep --gamma 0:0.2:3 --kappa 0.01,0.05 --out " + p2).exit_code == 0);
  const std::string a = slurp(p1), b = slurp(p2);
  CHECK(!a.empty());
  CHECK(a == b);
  std::remove(p1.c_str());
  std::remove(p2.c_str());
}

TEST_CASE("sweep rejects malformed grids and unknown policies") {
  CHECK(run("sweep --gamma 0:x:5 --kappa 0.05").exit_code == 2);
  CHECK(run("sweep --gamma 0,0.1 --kappa 0.05 --policy bogus").exit_code == 2);
}

TEST_CASE("mbqc demo reports unit map fidelity and writes a record") {
  const std::string rec = temp_path("ctsim_mbqc_record.txt");
  const RunResult r =
      run("mbqc-demo --angles 0.4,0.5,0.6 --seed 7 --out " + rec);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("map fidelity vs target rotation: 1") != std::string::npos);
  const std::string record = slurp(rec);
  CHECK(record.find("site 0") != std::string::npos);
  CHECK(record.find("outcome") != std::string::npos);
  std::remove(rec.c_str());
}

TEST_CASE("mbqc demo outcomes are reproducible for a fixed seed") {
  const RunResult a = run("mbqc-demo --angles 1.0,0.2,0.3 --seed 42");
  const RunResult b = run("mbqc-demo --angles 1.0,0.2,0.3 --seed 42");
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
}

TEST_CASE("a config file supplies subcommand defaults") {
  const std::string cfg = temp_path("ctsim_cli.cfg");
  {
    std::ofstream os(cfg);
    os << "[transfer]\ninput=\"g'\"\n";
  }
  const RunResult r = run("--config " + cfg + " transfer");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("|g,1L,0R>") != std::string::npos);
  std::remove(cfg.c_str());
}

TEST_CASE("CTSIM_OUT_DIR redirects relative output paths") {
  const std::string dir = temp_path("ctsim_outdir");
  const std::string mkcmd = "mkdir -p " + dir;
  REQUIRE(std::system(mkcmd.c_str()) == 0);
  const std::string cmd =
      "CTSIM_OUT_DIR=" + dir + " " + kCli + " sweep --gamma 0 --kappa 0 --out rel.csv 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (std::fread(buf, 1, sizeof(buf), pipe)) {
  }
  CHECK(WEXITSTATUS(pclose(pipe)) == 0);
  CHECK(!slurp(dir + "/rel.csv").empty());
  std::remove((dir + "/rel.csv").c_str());
}
