#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nodalmc/ensembles.hpp"
#include "nodalmc/nodal.hpp"

namespace nodalmc {

/// Compensated (Neumaier) sum in the given order.
double stable_sum(std::span<const double> xs);

/// 64-bit FNV-1a of a string, as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

struct MCSummary {
  std::size_t replicates = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double std_error = 0.0;
  std::pair<double, double> ci95{0.0, 0.0};
  std::string fingerprint;
};

/// Needs at least 2 values. ci95 = mean -/+ 1.96 SE.
MCSummary summarize(std::span<const double> values, std::string fingerprint = {});

enum class MeasurementKind { global_length, restricted_length, small_ball };

std::string to_string(MeasurementKind kind);
MeasurementKind parse_measurement_kind(const std::string& text);

/// restricted_length on planar ensembles measures V(F_x, B(0, radius)) for the
/// field rescaled to unit frequency around x = center. On the sphere it is the
/// same quantity: the geodesic ball of radius 2 pi radius / kappa around
/// center = (phi, theta), with the length multiplied by kappa / 2 pi.
struct Measurement {
  MeasurementKind kind = MeasurementKind::global_length;
  Point2 center{};
  double radius = 0.5;
  double tau = 0.1;  // small_ball
};

struct ExperimentSpec {
  EnsembleSpec ensemble;
  CoefficientLaw law;
  int grid = 128;            // torus N, sphere N_theta (N_phi = 2 N_theta), chart N
  double chart_side = 4.0;   // rwm global measurement only
  std::size_t replicates = 100;
  std::uint64_t seed = 0;
  Measurement measurement;
  /// Also measure on the grid of size grid/2 and extrapolate (global length only).
  bool richardson = false;

  std::string canonical() const;
  std::string fingerprint() const { return fnv1a_hex(canonical()); }
  /// Throws ValidationError when a module precondition fails.
  void validate() const;
};

struct ExpectationResult {
  MCSummary raw;
  std::optional<MCSummary> coarse;        // grid / 2
  std::optional<MCSummary> extrapolated;  // (4 raw - coarse) / 3 per replicate
  std::vector<double> values;             // per replicate, index order
  std::vector<double> coarse_values;
  double excluded_region_bound = 0.0;
  double vlogv_mean = 0.0;  // mean of V log V over replicates with V > 0

  /// Extrapolated summary when available, else raw.
  const MCSummary& best() const { return extrapolated ? *extrapolated : raw; }
};

/// One replicate's measurement on a grid of the given size (deterministic).
double measure_replicate(const ExperimentSpec& spec, const Ensemble& ensemble,
                         std::uint64_t replicate, int grid);

/// Replicates run concurrently (OpenMP); results are stored by index and
/// reduced in index order, so the summary does not depend on thread count.
ExpectationResult mc_expectation(const ExperimentSpec& spec);

/// Two-sample Kolmogorov-Smirnov distance (ties handled exactly).
double ks_statistic(std::span<const double> a, std::span<const double> b);

/// (1 + #{D_perm >= D}) / (1 + permutations), label permutations drawn from seed.
double ks_permutation_pvalue(std::span<const double> a, std::span<const double> b,
                             std::size_t permutations, std::uint64_t seed);

struct CompareResult {
  double ks = 0.0;
  double p_value = 1.0;
  std::size_t permutations = 0;
  MCSummary a;
  MCSummary b;
  std::vector<double> values_a;
  std::vector<double> values_b;
};

/// Needs the same measurement and grid, m >= 500 each and >= 1000 permutations.
CompareResult distribution_compare(const ExperimentSpec& a, const ExperimentSpec& b,
                                   std::size_t permutations = 1000);

struct VarianceRow {
  double parameter = 0.0;
  std::size_t modes = 0;
  MCSummary summary;
  double variance_se = 0.0;  // bootstrap
  double vlogv_mean = 0.0;
};

struct VarianceScan {
  std::vector<VarianceRow> rows;
  double loglog_slope = 0.0;  // least squares of log variance on log parameter
};

/// Runs each spec; parameters[i] labels specs[i]. Needs >= 3 rungs.
VarianceScan variance_scan(std::span<const ExperimentSpec> specs,
                           std::span<const double> parameters,
                           std::size_t bootstrap_resamples = 200);

/// Bootstrap standard error of the unbiased variance.
double bootstrap_variance_se(std::span<const double> values, std::size_t resamples,
                             std::uint64_t seed);

/// Least-squares slope of y on x.
double least_squares_slope(std::span<const double> x, std::span<const double> y);

struct LocalityResult {
  double global_length = 0.0;
  double reconstructed = 0.0;
  double relative_discrepancy = 0.0;  // 0 when both sides vanish
};

/// Global length of a torus sample against
/// (2^n lambda / omega_n) * mean_c V(F_c, B(0, 1/2)), with V(F_c, B(0, 1/2)) =
/// lambda * V(f, B(c, 1/(2 lambda))) and c on a centers_per_side^2 sub-grid.
LocalityResult locality_check(const FieldSample& sample, double lambda, int centers_per_side = 16);

struct LocalityBatch {
  std::vector<LocalityResult> samples;
  double mean_relative_discrepancy = 0.0;
};

/// Batch over replicates 0..count-1 of a torus ensemble.
LocalityBatch locality_batch(const Ensemble& ensemble, const CoefficientLaw& law,
                             std::uint64_t seed, std::size_t count, int grid,
                             int centers_per_side = 16);

}  // namespace nodalmc
