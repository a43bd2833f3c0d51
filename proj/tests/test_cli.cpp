#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(XRANK_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("rank-form on pinned inputs") {
  auto r = run("rank-form --coeffs 1,0,0,0,1");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"rank\": 2") != std::string::npos);
  // x y^3: rank 4
  auto r2 = run("rank-form --coeffs 0,0,0,1,0");
  CHECK(r2.exit_code == 0);
  CHECK(r2.out.find("\"rank\": 4") != std::string::npos);
  // parse failure
  auto r3 = run("rank-form --coeffs 1,zebra");
  CHECK(r3.exit_code == 2);
  auto r4 = run("rank-form");
  CHECK(r4.exit_code == 2);
}

TEST_CASE("classify subcommand") {
  auto r = run("classify --center-coeffs 1,0,0,0,1");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"nodal\"") != std::string::npos);
  auto r2 = run("classify --center-coeffs 0,0,0,1,0");
  CHECK(r2.out.find("\"cuspidal\"") != std::string::npos);
  CHECK(r2.out.find("\"center_rank\": 4") != std::string::npos);
}

TEST_CASE("projected-rank exit codes distinguish certified results") {
  // cusp quartic, a point on the curve: rank 1, certified
  auto r = run("projected-rank --center-coeffs 0,0,0,1,0 --point 1,4,6,1");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"certified\": true") != std::string::npos);
  // nodal center, generic point: only an upper bound
  auto r2 = run("projected-rank --center-coeffs 1,0,0,0,1 --point 1,2,3,5");
  CHECK(r2.exit_code == 3);
  CHECK(r2.out.find("\"certified\": false") != std::string::npos);
}

TEST_CASE("secant-profile emits formula rows for curves") {
  auto r = run("secant-profile --variety rnc:7 --smax 4 --seed 5");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"dim\": 1") != std::string::npos);
  CHECK(r.out.find("\"dim\": 3") != std::string::npos);
  CHECK(r.out.find("\"dim\": 5") != std::string::npos);
  CHECK(r.out.find("\"dim\": 7") != std::string::npos);
  auto bad = run("secant-profile --variety torus:3");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("line-rank on a secant line") {
  // center x^4+y^4 (nodal), line through the images of t=1 and t=2
  auto r = run("line-rank --center-coeffs 1,0,0,0,1 "
               "--line-points \"4,6,4,0;8,24,32,15\"");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"rank_value\": 2") != std::string::npos);
  CHECK(r.out.find("two-or-more-points") != std::string::npos);
}

TEST_CASE("verify runs, reports, and signals failures deterministically") {
  auto r = run("verify --suite terracini --scale quick --seed 7 --comparable");
  CHECK(r.exit_code == 0);
  auto r2 = run("verify --suite terracini --scale quick --seed 7 --comparable");
  CHECK(r.out == r2.out);
  auto unknown = run("verify --suite nonsense");
  CHECK(unknown.exit_code == 2);
  // parallel execution produces the same bytes
  auto r3 = run("verify --suite terracini --scale quick --seed 7 --comparable --parallel 3");
  CHECK(r3.out == r.out);
  // without --comparable a timestamp header appears
  auto r4 = run("verify --suite terracini --scale quick --seed 7");
  CHECK(r4.out.find("timestamp_ms") != std::string::npos);
  CHECK(r.out.find("timestamp_ms") == std::string::npos);
}

TEST_CASE("XRANK_SEED is honored as the default") {
  auto a = run("verify --suite terracini --scale quick --comparable --seed 99");
  std::string cmd = "XRANK_SEED=99 " + std::string(XRANK_CLI_PATH) +
                    " verify --suite terracini --scale quick --comparable 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  pclose(pipe);
  CHECK(out == a.out);
}
