#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace nodalmc::cli {

enum ExitCode : int { ok = 0, usage_error = 1, validation_error = 2 };

/// Fully resolved run configuration. Every field has a default; a config
/// file (key=value per line) is read first and command-line flags override it.
struct RunConfig {
  std::string command;
  std::string ensemble = "arw";
  long n = 5;
  int ell = 20;
  double T = 30.0;
  double rho = 0.0;  // <= 0 selects T / log T
  int J = 256;
  int dim = 2;
  std::string basis = "real";
  std::string law = "gaussian";
  std::string law_b = "rademacher";
  int grid = 128;
  double chart_side = 4.0;
  std::size_t m = 100;
  std::uint64_t seed = 0;
  std::uint64_t seed_b = 0;  // 0 selects seed + 1
  std::uint64_t replicate = 0;  // sample
  int workers = 0;           // 0 keeps the OpenMP default
  std::string measurement = "global_length";
  double center_u = 0.0;
  double center_v = 0.0;
  double radius = 0.5;
  double tau = 0.1;
  std::vector<double> taus{0.01, 0.05, 0.1};
  bool richardson = false;
  std::size_t permutations = 1000;
  std::vector<double> ladder;
  std::vector<int> lags{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  int centers = 16;
  long arw = -1;  // lattice: print the circle |mu|^2 = arw
  double upsilon = 1.0;
  std::string values = "csv";  // sample export: csv or bin
  std::string out;
  std::string format = "json";
  std::string per_replicate;
  std::string contours;
};

/// Ordered (key, value) pairs of everything that determines a run's result.
std::vector<std::pair<std::string, std::string>> resolved_items(const RunConfig& config);

/// FNV-1a over the resolved items.
std::string config_fingerprint(const RunConfig& config);

/// Parses argv and runs a subcommand. Results go to `out` (or --out), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nodalmc::cli
