#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "juryconv/io.hpp"

using namespace juryconv;

namespace {

const std::string kCli = JURYCONV_CLI;
const std::string kData = JURYCONV_TEST_DATA;

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run(const std::string& args) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto out = dir / "juryconv_cli_test.out";
  const auto err = dir / "juryconv_cli_test.err";
  const std::string cmd = kCli + " " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string data(const char* name) { return kData + "/" + name; }

}  // namespace

TEST_CASE("conv") {
  auto r = run("conv " + data("a.json") + " " + data("b.json"));
  REQUIRE(r.code == 0);
  const auto m = matrix_from_json(json::parse(r.out));
  CHECK(std::get<ConvMatrix<Rational>>(m) ==
        ConvMatrix<Rational>{{Rational(5), Rational(16)}, {Rational(22), Rational(60)}});

  r = run("conv --padded " + data("a.json") + " " + data("b.json"));
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j.at("rows") == 3);
  CHECK(j.at("cols") == 3);

  // CSV input gives the same product
  r = run("conv " + data("a.csv") + " " + data("b.json"));
  CHECK(r.code == 0);
  CHECK(json::parse(r.out).at("data")[1][1] == "60");

  r = run("conv " + data("a.json") + " " + data("malformed.json"));
  CHECK(r.code == 2);
  CHECK(r.err.find("data[1]") != std::string::npos);
  r = run("conv " + data("a.json") + " " + data("truncated.json"));
  CHECK(r.code == 2);
  r = run("conv " + data("a.json") + " " + data("nonexistent.json"));
  CHECK(r.code == 2);
}

TEST_CASE("inverse") {
  for (const char* method : {"recursive", "ch"}) {
    const auto r = run(std::string("inverse --method ") + method + " " + data("a.json"));
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out).at("data") == json::parse(R"([["1","-2"],["-3","8"]])"));
  }
  const auto r = run("inverse " + data("singular.json"));
  CHECK(r.code == 2);
  CHECK(r.err.find("singular") != std::string::npos);
}

TEST_CASE("transform") {
  auto r = run("transform " + data("swap.json") + " --function exp");
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j.at("mode") == "smooth");
  CHECK(j.at("backend") == "complex");
  const auto m = std::get<ConvMatrix<Complex>>(matrix_from_json(j.at("result")));
  for (const auto& x : m.data()) CHECK(std::abs(x - Complex(1.0)) < 1e-15);

  r = run("transform " + data("a.json") + " --function poly:0,0,1");
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  CHECK(j.at("backend") == "rational");
  CHECK(j.at("result").at("data") == json::parse(R"([["1","4"],["6","20"]])"));

  r = run("transform " + data("a.json") + " --function poly:0,0,1 --mode stepped --h 2");
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  CHECK(j.at("h") == "2");
  // D_2^1 x^2 at 1 is 4, D_2^2 is 2: entries b*4, c*4, d*4 + b*c*2
  CHECK(j.at("result").at("data") == json::parse(R"([["1","8"],["12","28"]])"));

  // step leaves the domain
  r = run("transform " + data("half.json") + " --function series:1,1,1@1 --mode stepped --h 1/4");
  CHECK(r.code == 2);
  CHECK(r.err.find("a00 + 2h") != std::string::npos);
  r = run("transform " + data("swap.json") + " --function power:0.5 --mode stepped --h 1/2");
  CHECK(r.code == 2);
  r = run("transform " + data("a.json") + " --function exp --mode stepped");
  CHECK(r.code == 2);
  r = run("transform " + data("a.json") + " --function sin");
  CHECK(r.code == 2);
}

TEST_CASE("minpoly and partitions") {
  auto r = run("minpoly " + data("a.json"));
  REQUIRE(r.code == 0);
  CHECK(r.out == "(z - 1)^3  witness (1,1)\n");
  r = run("partitions --rows 2 --cols 2 --count 2 --i 1 --j 1");
  REQUIRE(r.code == 0);
  CHECK(r.out == "(0,1)^1 (1,0)^1\n1 partitions\n");
  r = run("partitions --rows 2 --cols 2 --count 2 --i 1 --j 1 --include-origin");
  CHECK(r.out.find("2 partitions") != std::string::npos);
}

TEST_CASE("bruhat") {
  auto r = run("bruhat --perm \"3 1 2\" --perm \"3 2 1\"");
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j.at("leq") == true);
  CHECK(j.at("geq") == false);
  CHECK(j.at("incomparable") == false);
  CHECK(j.at("rank_matrices").size() == 2);
  r = run("bruhat --perm \"1 3 2\" --perm \"2 1 3\"");
  CHECK(json::parse(r.out).at("incomparable") == true);
  r = run("bruhat --perm \"1 1 2\" --perm \"1 2 3\"");
  CHECK(r.code == 2);
  r = run("bruhat --perm \"1 2\" --perm \"1 2 3\"");
  CHECK(r.code == 2);
}

TEST_CASE("prob-sum") {
  const auto r = run("prob-sum --psd-chain 3 " + data("uniform_diag.json") + " " + data("uniform_diag.json"));
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j.at("kind") == "distribution");
  CHECK(j.at("data") == json::parse(R"([["1/4","0","0"],["0","1/2","0"],["0","0","1/4"]])"));
  CHECK(j.contains("psd_chain"));
  CHECK(run("prob-sum " + data("a.json")).code == 2);
}

TEST_CASE("suites") {
  auto r = run("suite ch");
  CHECK(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j.at("all_expectations_met") == true);
  CHECK(j.at("config").at("seed") == 20240601);

  r = run("suite fh --N 3 --alpha 0.5");
  CHECK(r.code == 0);
  j = json::parse(r.out);
  REQUIRE(j.at("expectations").size() == 1);
  CHECK(j.at("expectations")[0].at("expect") == "counterexample");
  CHECK(j.at("expectations")[0].at("met") == true);

  r = run("suite bruhat --n 4");
  CHECK(r.code == 0);
  CHECK(r.out.find("576") != std::string::npos);

  // seeds reproduce bit-identical reports
  const auto a = run("--seed 9 --trials 20 suite closure");
  const auto b = run("--seed 9 --trials 20 suite closure");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(json::parse(a.out).at("config").at("seed") == 9);

  // a config file drives the run
  r = run("suite fh --config " + data("fh_config.json"));
  CHECK(r.code == 0);
  CHECK(json::parse(r.out).at("config").at("trials") == 100);

  // an expected counterexample that is not found is a violated expectation
  r = run("--tol 1e6 --trials 50 suite fh --N 2 --alpha -0.5");
  CHECK(r.code == 1);
  CHECK(r.err.find("FAIL") != std::string::npos);

  CHECK(run("suite nosuch").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("--backend float conv " + data("a.json") + " " + data("b.json")).code == 2);
}

TEST_CASE("output file") {
  const auto out = std::filesystem::temp_directory_path() / "juryconv_cli_out.json";
  std::filesystem::remove(out);
  const auto r = run("--out " + out.string() + " conv " + data("a.json") + " " + data("b.json"));
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  CHECK(json::parse(slurp(out)).at("rows") == 2);
  std::filesystem::remove(out);
}
