// End-to-end checks of the CLI binary. The test runner passes the binary
// path in POLYGF_CLI and the shipped JSON documents in POLYGF_DATA.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

std::string cli_path() {
  const char* env = std::getenv("POLYGF_CLI");
  REQUIRE_MESSAGE(env != nullptr, "POLYGF_CLI must point at the binary");
  return env;
}

std::string data_path() {
  const char* env = std::getenv("POLYGF_DATA");
  REQUIRE_MESSAGE(env != nullptr, "POLYGF_DATA must point at the data dir");
  return env;
}

RunResult run(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0)
    result.output.append(buf, got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

}  // namespace

TEST_CASE("series dumps are canonical and deterministic") {
  const auto r = run("series --kind linear --what F --orders 6 6");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("3 2 1/1") != std::string::npos);
  CHECK(r.output.find("1 0 1/1") != std::string::npos);

  const auto again = run("series --kind linear --what F --orders 6 6");
  CHECK(again.output == r.output);

  const auto rings = run("series --kind rings --what F --orders 4 4");
  CHECK(rings.exit_code == 0);
  CHECK(rings.output ==
        "1 0 1/1\n1 1 1/1\n2 1 1/1\n2 2 1/2\n"
        "3 2 1/1\n3 3 1/3\n4 3 1/1\n4 4 1/4\n");

  const auto z = run("series --kind linear --what Z --orders 6 6");
  CHECK(z.exit_code == 0);
  CHECK(z.output.find("6 4 5/2") != std::string::npos);
}

TEST_CASE("series json format") {
  const auto r = run("series --kind rings --what F --orders 4 4 --format json");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.output);
  CHECK(j["order_x"] == 4);
  bool found = false;
  for (const auto& t : j["terms"])
    if (t["i"] == 4 && t["j"] == 4 && t["c"] == "1/4") found = true;
  CHECK(found);
}

TEST_CASE("equilibrium command") {
  const auto lin = run("equilibrium --kind linear --c 1 --y 1");
  CHECK(lin.exit_code == 0);
  const auto jl = nlohmann::json::parse(lin.output);
  CHECK(std::abs(jl["x"].get<double>() - (3.0 - std::sqrt(5.0)) / 2.0) < 1e-12);
  CHECK(jl["residual"].get<double>() < 1e-12);
  CHECK(jl["converged"].get<bool>());

  const auto rng = run("equilibrium --kind rings --c 1 --y 1");
  CHECK(rng.exit_code == 0);
  const auto jr = nlohmann::json::parse(rng.output);
  CHECK(std::abs(jr["x"].get<double>() - (1.0 - std::sqrt(2.0) / 2.0)) < 1e-12);

  const auto free = run("equilibrium --kind linear --c 0.7 --y 0");
  const auto jf = nlohmann::json::parse(free.output);
  CHECK(jf["x"].get<double>() == doctest::Approx(0.7));

  const auto table = run("equilibrium --kind rings --c 1 --y 1 --n-max 4");
  CHECK(table.exit_code == 0);
  CHECK(table.output.find("n,kind,concentration") != std::string::npos);
  CHECK(table.output.find("3,chain,") != std::string::npos);
  CHECK(table.output.find("3,ring,") != std::string::npos);
}

TEST_CASE("partition command emits the canonical table") {
  const auto r = run("partition --kind linear --N 3");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "{\"N\":3,\"coeffs\":[\"1/6\",\"1/1\",\"1/1\"]}\n");

  // all three routes agree byte for byte
  const auto faa = run("partition --kind linear --N 3 --route faa");
  const auto states = run("partition --kind linear --N 3 --route states");
  CHECK(faa.output == r.output);
  CHECK(states.output == r.output);

  const auto rings = run("partition --kind rings --N 2");
  CHECK(rings.output ==
        "{\"N\":2,\"coeffs\":[\"1/2\",\"2/1\",\"1/1\"]}\n");
}

TEST_CASE("probability command") {
  const auto r =
      run("probability --kind linear --N 2 --y 1 --ensemble canonical");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find(",1/3,") != std::string::npos);
  CHECK(r.output.find(",2/3,") != std::string::npos);
  CHECK(r.output.find("total,,,,1/1,") != std::string::npos);

  const auto grand =
      run("probability --kind rings --N 4 --y 0.5 --x 0.2 --ensemble grand");
  CHECK(grand.exit_code == 0);
  CHECK(grand.output.find("empty") != std::string::npos);
}

TEST_CASE("verify subcommand") {
  const auto r = run("verify --module permcycles --orders 8 8");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("[PASS] permcycles.census_matches_formula") !=
        std::string::npos);
  CHECK(r.output.find("[FAIL]") == std::string::npos);
}

TEST_CASE("exit codes distinguish usage, verification and numeric errors") {
  CHECK(run("series --kind bogus --what F --orders 4 4").exit_code == 1);
  CHECK(run("series --what nope --orders 4 4").exit_code == 1);
  CHECK(run("equilibrium --kind linear --c -1 --y 1").exit_code == 3);
  CHECK(run("partition --kind linear --N 99 --route faa").exit_code == 1);
  CHECK(run("nonsense").exit_code == 1);
}

TEST_CASE("POLYGF_DESK_LIMIT raises the enumeration guards") {
  CHECK(run("partition --kind linear --N 11 --route faa").exit_code == 1);
  // popen goes through the shell, so an env prefix works
  const std::string cmd = "POLYGF_DESK_LIMIT=11 " + cli_path() +
                          " partition --kind linear --N 11 --route faa"
                          " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) output.append(buf, got);
  const int status = pclose(pipe);
  CHECK(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 0);
  CHECK(output.find("\"N\":11") != std::string::npos);
  CHECK(output.find("1/39916800") != std::string::npos);  // 1/11!
}

TEST_CASE("bondsys subcommand") {
  const std::string dir = data_path();
  const auto ok = run("bondsys --system " + dir + "/linear_polymers.json" +
                      " --structure " + dir + "/chain3_structure.json");
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("[PASS] axiom left-cancellation") != std::string::npos);
  CHECK(ok.output.find("order(b1) = 1") != std::string::npos);
  CHECK(ok.output.find("valid assembly (linear): yes") != std::string::npos);

  const auto bad = run("bondsys --system " + dir +
                       "/left_cancellation_counterexample.json");
  CHECK(bad.exit_code == 2);
  CHECK(bad.output.find("[FAIL] axiom left-cancellation") != std::string::npos);

  const auto ring = run("bondsys --system " + dir + "/linear_polymers.json" +
                        " --structure " + dir + "/ring3_structure.json" +
                        " --kind rings");
  CHECK(ring.exit_code == 0);
  CHECK(ring.output.find("valid assembly (rings(min=1)): yes") !=
        std::string::npos);
}

TEST_CASE("output files are written atomically and match stdout") {
  const std::string path = "/tmp/polygf_cli_series_dump.txt";
  std::remove(path.c_str());
  const auto direct = run("series --kind linear --what F --orders 5 5");
  const auto filed =
      run("series --kind linear --what F --orders 5 5 --output " + path);
  CHECK(filed.exit_code == 0);
  CHECK(filed.output.empty());
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == direct.output);
  std::remove(path.c_str());
}
