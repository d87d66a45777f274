// Drives the lrmem executable end to end.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path = fs::temp_directory_path() / ("lrmem_cli_test_" + std::to_string(::getpid()));
  TempDir() { fs::create_directories(path); }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

const fs::path& workdir() {
  static const TempDir dir;
  return dir.path;
}

int run(const std::string& args) {
  const std::string cmd = std::string(LRMEM_CLI_PATH) + " " + args + " 2>" + (workdir() / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string path(const char* name) { return (workdir() / name).string(); }

}  // namespace

TEST_CASE("simulate is deterministic") {
  const std::string base = "simulate --d 0.1,0.4 --rho 0.3 --n 300 --truncation 2000 --seed 7 --out ";
  REQUIRE(run(base + path("a.csv")) == 0);
  REQUIRE(run(base + path("b.csv")) == 0);
  const auto a = slurp(path("a.csv"));
  CHECK(!a.empty());
  CHECK(a == slurp(path("b.csv")));
  REQUIRE(run("simulate --d 0.1,0.4 --rho 0.3 --n 300 --truncation 2000 --seed 8 --out " + path("c.csv")) == 0);
  CHECK(a != slurp(path("c.csv")));
}

TEST_CASE("estimate writes json") {
  REQUIRE(run("simulate --d 0.2,0.3 --n 500 --truncation 2000 --seed 1 --out " + path("x.csv")) == 0);
  REQUIRE(run("estimate --input " + path("x.csv") + " --method ssh --beta 0.7 --out " + path("e.json")) == 0);
  const auto j = slurp(path("e.json"));
  CHECK(j.find("\"d_hat\"") != std::string::npos);
  CHECK(j.find("\"method\": \"ssh\"") != std::string::npos);
  REQUIRE(run("estimate --input " + path("x.csv") + " --real-cross-spectrum --out " + path("r.json")) == 0);
  CHECK(slurp(path("r.json")).find("\"d_hat\"") != std::string::npos);
}

TEST_CASE("spectrum writes csv") {
  REQUIRE(run("simulate --d 0.2,0.3 --n 200 --truncation 1000 --seed 2 --out " + path("s.csv")) == 0);
  REQUIRE(run("spectrum --input " + path("s.csv") + " --method smoothed --m 10 --ell 3 --out " + path("f.csv")) == 0);
  const auto f = slurp(path("f.csv"));
  CHECK(f.rfind("j,lambda,", 0) == 0);
  std::size_t lines = 0;
  for (char c : f) lines += c == '\n';
  CHECK(lines == 11);
}

TEST_CASE("exit codes") {
  CHECK(run("simulate --d 0.7,0.1 --n 100") == 2);
  CHECK(slurp(path("stderr.txt")).rfind("error:", 0) == 0);
  CHECK(run("estimate --input " + path("missing.csv")) == 1);
  std::ofstream(path("empty.csv")).close();
  CHECK(run("estimate --input " + path("empty.csv")) == 3);
  CHECK(run("estimate --input " + path("x.csv") + " --method bogus") == 2);
  CHECK(run("frobnicate") == 2);
}

TEST_CASE("mc writes a table") {
  std::ofstream(path("grid.json")) << R"({"n":128,"replications":2,"truncation":500,"d_list":[[0.1,0.2]],)"
                                   << R"("rho_list":[0],"methods":["Sh","TSh"],"alpha_list":[0.8]})";
  REQUIRE(run("mc --config " + path("grid.json") + " --threads 1 --out-dir " + path("mc")) == 0);
  const auto table = slurp(workdir() / "mc" / "table.csv");
  CHECK(table.rfind("method,beta,alpha,rho,d_true_1,d_true_2,coord,mean,sd,mse\n", 0) == 0);
  CHECK(fs::exists(workdir() / "mc" / "raw" / "cell_001.csv"));
  CHECK(fs::exists(workdir() / "mc" / "cells.csv"));
}
