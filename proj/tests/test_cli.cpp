#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

const fs::path kWork = fs::temp_directory_path() / "robust_spanner_cli_test";

int run(const std::string& args) {
  const std::string cmd = std::string(ROBUST_SPANNER_CLI) + " " + args + " >" +
                          (kWork / "stdout.txt").string() + " 2>" + (kWork / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string out_path(const std::string& name) { return (kWork / name).string(); }

struct Workdir {
  Workdir() { fs::create_directories(kWork); }
};

}  // namespace

TEST_CASE_FIXTURE(Workdir, "build writes edge and point files") {
  REQUIRE(run("build --n 16 --ell 1 --points uniform --seed 7 --out " + out_path("g")) == 0);
  CHECK(slurp(kWork / "stdout.txt") == "n=16 ell=1 m=2 edges=78\n");
  CHECK(fs::exists(kWork / "g.edges"));
  CHECK(fs::exists(kWork / "g.points"));
}

TEST_CASE_FIXTURE(Workdir, "epsilon 0.5 selects ell 1") {
  REQUIRE(run("build --n 100 --ell 1 --out " + out_path("by_ell")) == 0);
  REQUIRE(run("build --n 100 --epsilon 0.5 --out " + out_path("by_eps")) == 0);
  CHECK(slurp(kWork / "by_ell.edges") == slurp(kWork / "by_eps.edges"));
}

TEST_CASE_FIXTURE(Workdir, "usage errors exit 2") {
  CHECK(run("build --n 0 --ell 1") == 2);
  CHECK(run("build --n 16") == 2);
  CHECK(run("build --n 16 --ell 1 --epsilon 0.5") == 2);
  CHECK(run("frobnicate") == 2);
  CHECK(run("verify --n 16 --ell 1 --failures nonsense") == 2);
  CHECK(run("verify --n 16 --ell 1 --failures half-cluster-wipe --layer 1 --ordinal 99") == 2);
  CHECK(run("build --ell 1 --points " + out_path("missing.txt")) == 2);
}

TEST_CASE_FIXTURE(Workdir, "verify passes on the built graph and fails on a sabotaged one") {
  REQUIRE(run("build --n 64 --ell 1 --seed 3 --out " + out_path("s")) == 0);
  const std::string points = " --points " + out_path("s.points");
  CHECK(run("verify --ell 1" + points + " --graph " + out_path("s.edges") +
            " --failures random-k --k 5 --out " + out_path("report.json")) == 0);
  CHECK(slurp(kWork / "report.json").find("\"verdict\": \"PASS\"") != std::string::npos);

  std::string edges = slurp(kWork / "s.edges");
  const auto pos = edges.find("0 1\n");
  REQUIRE(pos != std::string::npos);
  edges.erase(pos, 4);
  std::ofstream(kWork / "broken.edges") << edges;
  CHECK(run("verify --ell 1" + points + " --graph " + out_path("broken.edges")) == 1);
  CHECK(slurp(kWork / "stdout.txt").find("\"verdict\": \"FAIL\"") != std::string::npos);
}

TEST_CASE_FIXTURE(Workdir, "verify accepts explicit failure lists") {
  CHECK(run("verify --n 16 --ell 1 --failures file --failure-list 2,3 --trace " +
            out_path("trace.json")) == 0);
  const std::string trace = slurp(kWork / "trace.json");
  CHECK(trace.find("\"f_star\":[0,1,2,3,4,5]") != std::string::npos);
}

TEST_CASE_FIXTURE(Workdir, "closure-stats emits one csv row per trial") {
  REQUIRE(run("closure-stats --n 216 --ell 2 --failures random-k --k 11 --trials 25 --seed 4") == 0);
  std::istringstream csv(slurp(kWork / "stdout.txt"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "trial,seed,failed,ignored,ratio,bound_ok,layer_sizes");
  int rows = 0;
  while (std::getline(csv, line)) ++rows;
  CHECK(rows == 25);
}

TEST_CASE_FIXTURE(Workdir, "scaling exit status follows the fitted slope") {
  CHECK(run("scaling --ell 1 --n 1024 4096") == 0);
  CHECK(slurp(kWork / "stdout.txt").find("row,4096,1,32,") != std::string::npos);
  CHECK(run("scaling --ell 1 --n 16 36 --format json") == 1);
}
