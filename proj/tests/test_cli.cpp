#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "nodalmc/cli.hpp"

using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "nodal_mc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = nodalmc::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch() {
  auto d = std::filesystem::temp_directory_path() / "nodalmc_cli_test";
  std::filesystem::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("kacrice") {
  const auto r = run({"kacrice", "--dim", "2"});
  REQUIRE(r.code == 0);
  const auto d = r.doc();
  CHECK(d["schema"] == 1);
  CHECK(d["command"] == "kacrice");
  CHECK(d["result"]["density"].get<double>() == doctest::Approx(2.2214414690791835).epsilon(1e-15));
  const auto three = run({"kacrice", "--dim", "3"}).doc();
  // sqrt(4 pi / 3) Gamma(2) / Gamma(3/2) = 4 / sqrt(3)
  CHECK(three["result"]["density"].get<double>() == doctest::Approx(4.0 / std::sqrt(3.0)).epsilon(1e-14));
}

TEST_CASE("lattice") {
  const auto five = run({"lattice", "--arw", "5"});
  REQUIRE(five.code == 0);
  CHECK(five.doc()["result"]["count"] == 8);
  CHECK(five.doc()["result"]["points"].size() == 8);
  const auto three = run({"lattice", "--arw", "3"});
  CHECK(three.code == 0);
  CHECK(three.doc()["result"]["count"] == 0);
  CHECK(three.doc()["result"]["points"].empty());
}

TEST_CASE("expectation output is identical across worker counts") {
  const std::vector<std::string> base{"expectation", "--ensemble", "arw", "--n", "5", "--grid", "64",
                                      "--m", "20", "--seed", "3", "--richardson"};
  auto a = base, b = base;
  a.insert(a.end(), {"--workers", "1"});
  b.insert(b.end(), {"--workers", "2"});
  const auto ra = run(a), rb = run(b);
  REQUIRE(ra.code == 0);
  CHECK(ra.out == rb.out);
  const auto d = ra.doc();
  CHECK(d["result"]["raw"]["replicates"] == 20);
  CHECK(d["result"].contains("extrapolated"));
  CHECK(d["fingerprint"].get<std::string>().size() == 16);
}

TEST_CASE("config files round-trip and flags take precedence") {
  const auto dir = scratch();
  const auto cfg = (dir / "run.cfg").string();
  const auto first = run({"expectation", "--n", "13", "--grid", "64", "--m", "10", "--seed", "5",
                          "--save-config", cfg});
  REQUIRE(first.code == 0);
  const auto again = run({"expectation", "--config", cfg});
  REQUIRE(again.code == 0);
  CHECK(again.out == first.out);

  const auto over = run({"expectation", "--config", cfg, "--seed", "6"});
  CHECK(over.doc()["seed"] == 6);

  setenv("NODAL_MC_SEED", "77", 1);
  CHECK(run({"kacrice"}).doc()["seed"] == 77);
  CHECK(run({"kacrice", "--seed", "8"}).doc()["seed"] == 8);
  CHECK(run({"expectation", "--config", cfg}).doc()["seed"] == 5);
  unsetenv("NODAL_MC_SEED");

  std::ofstream(dir / "bad.cfg") << "grid=64\nbogus=1\n";
  CHECK(run({"kacrice", "--config", (dir / "bad.cfg").string()}).code == 1);
  std::filesystem::remove_all(dir);
}

TEST_CASE("exit codes") {
  const auto unknown = run({"kacrice", "--frobnicate", "3"});
  CHECK(unknown.code == 1);
  CHECK(unknown.err.find("--frobnicate") != std::string::npos);
  CHECK(run({}).code == 1);
  CHECK(run({"expectation", "--law", "cauchy"}).code == 1);
  CHECK(run({"expectation", "--ensemble", "cube"}).code == 1);
  CHECK(run({"--help"}).code == 0);
  const auto bad = run({"expectation", "--n", "3", "--m", "10"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("sum of two squares") != std::string::npos);
  CHECK(run({"small-ball", "--m", "10"}).code == 2);
}

TEST_CASE("alternative formats") {
  const auto csv = run({"kacrice", "--format", "csv"});
  REQUIRE(csv.code == 0);
  CHECK(csv.out.find("density") != std::string::npos);
  const auto table = run({"kacrice", "--format", "table"});
  REQUIRE(table.code == 0);
  CHECK(table.out.find("density") != std::string::npos);
}

TEST_CASE("sample export") {
  const auto dir = scratch();
  const auto prefix = (dir / "s").string();
  const auto r = run({"sample", "--ensemble", "sphere", "--ell", "4", "--grid", "32", "--out", prefix,
                      "--values", "bin", "--contours", (dir / "c.csv").string()});
  REQUIRE(r.code == 0);
  CHECK(std::filesystem::exists(prefix + ".json"));
  CHECK(std::filesystem::file_size(prefix + ".bin") == 32 * 64 * sizeof(double));
  CHECK(std::filesystem::exists(dir / "c.csv"));
  CHECK(r.doc()["result"]["nodal_length"].get<double>() > 0.0);
  std::filesystem::remove_all(dir);
}
