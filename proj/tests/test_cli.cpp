#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "test_util.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(SELBERG_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("selberg_cli_" + name);
}

}  // namespace

TEST_CASE("usage errors") {
  CHECK(run("").code == 2);
  CHECK(run("verify --suite nope").code == 2);
  CHECK(run("prob --rect 1,2").code == 2);
  CHECK(run("prob --rect 2,1,0,1").code == 2);
  CHECK(run("coeffs --family q").code == 2);
  CHECK(run("prob --rect 0,1,0,1 --theta 0.7").code == 2);
}

TEST_CASE("prob") {
  const auto plane = run("prob --rect=-inf,inf,-inf,inf");
  REQUIRE(plane.code == 0);
  const auto j = nlohmann::json::parse(plane.out);
  CHECK(std::abs(j["value"].get<double>() - 1.0) <= 1e-14);
  CHECK(j["rect"][0] == "-inf");
  CHECK(j["D"] == 8);

  const auto quad = nlohmann::json::parse(run("prob --degree 0 --rect 0,inf,0,inf").out);
  CHECK(std::abs(quad["value"].get<double>() - 0.25) <= 1e-15);
  CHECK(quad["correction_budget"] == 0.0);
}

TEST_CASE("coeffs") {
  const auto low = run("coeffs --degree 2");
  REQUIRE(low.code == 0);
  const auto j = nlohmann::json::parse(low.out);
  CHECK(j["family"] == "d");
  for (const auto& e : j["entries"])
    CHECK(e["value"].get<double>() == (e["k"] == 0 && e["l"] == 0 ? 1.0 : 0.0));

  const auto path = scratch("bprime.json");
  REQUIRE(run("coeffs --family b_prime --degree 5 --out " + path.string()).code == 0);
  std::ifstream in(path);
  const auto file = nlohmann::json::parse(in);
  CHECK(file["family"] == "b_prime");
  CHECK(file["entries"].size() == 9);  // 1 <= k, l with k + l in {3, 4, 5}
  std::filesystem::remove(path);
}

TEST_CASE("density grid") {
  const auto r = run("density --min -1 --max 1 --points 3");
  REQUIRE(r.code == 0);
  std::istringstream s(r.out);
  std::string line;
  std::getline(s, line);
  CHECK(line == "x,y,F,negative");
  int rows = 0;
  while (std::getline(s, line)) ++rows;
  CHECK(rows == 9);
}

TEST_CASE("monte carlo is reproducible") {
  const std::string args = "mc --sigma 0.8 --primes 100 --samples 200 --seed 11";
  const auto a = run(args), b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(run("mc --sigma 0.8 --primes 100 --samples 200 --seed 12").out != a.out);
  const auto rect = nlohmann::json::parse(run(args + " --rect=-inf,inf,-inf,inf").out);
  CHECK(rect["rectangles"][0]["value"] == 1.0);
}

TEST_CASE("compare on a saved measure") {
  const auto path = scratch("mc.csv");
  REQUIRE(run("mc --primes 1000 --samples 2000 --seed 3 --out " + path.string()).code == 0);
  const auto report = scratch("compare.json");
  const auto r = run("compare --zeta-samples 0 --mc-in " + path.string() + " --rect 0.5,0.5,0,1 --out " +
                     report.string());
  CHECK(r.code == 0);
  std::ifstream in(report);
  const auto j = nlohmann::json::parse(in);
  const auto& row = j["rectangles"][0];
  CHECK(row["expansion"] == 0.0);
  CHECK(row["monte_carlo"]["value"] == 0.0);
  CHECK(row["flags"].empty());
  std::filesystem::remove(path);
  std::filesystem::remove(report);
}

TEST_CASE("verify") {
  const auto r = run("verify --suite hermite");
  CHECK(r.code == 0);
  CHECK(r.out.find("0 failed") != std::string::npos);
}
