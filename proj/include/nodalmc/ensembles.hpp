#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "nodalmc/coeff_laws.hpp"
#include "nodalmc/grid.hpp"
#include "nodalmc/spectra.hpp"

namespace nodalmc {

/// Deterministic real function of grid coordinates: (u, v) = (x, y) on the
/// torus and plane charts, (phi, theta) on the sphere.
class FieldFunction {
 public:
  virtual ~FieldFunction() = default;
  virtual double value(double u, double v) const = 0;
};

class AnalyticField final : public FieldFunction {
 public:
  explicit AnalyticField(std::function<double(double, double)> f) : f_(std::move(f)) {}
  double value(double u, double v) const override { return f_(u, v); }

 private:
  std::function<double(double, double)> f_;
};

struct EnsembleDescriptor {
  std::string ensemble = "analytic";
  std::string parameters;
  std::string law;
  std::uint64_t master_seed = 0;
  std::uint64_t replicate = 0;
};

/// One realization on a structured grid.
struct FieldSample {
  GridGeometry geometry;
  std::vector<double> values;
  EnsembleDescriptor ensemble;
  double frequency_scale = 0.0;  // sqrt(n), T, l, or 1 for the plane
  double wavenumber = 0.0;       // physical angular wavenumber; 0 disables resolution checks
  std::shared_ptr<const FieldFunction> function;  // exact evaluation, may be null

  double at(int i, int j) const { return values[geometry.index(i, j)]; }
};

/// Tabulates a deterministic function on a grid (test fields, exports).
FieldSample make_sample(const GridGeometry& geometry, std::shared_ptr<const FieldFunction> f,
                        double wavenumber, EnsembleDescriptor descriptor = {});

/// A random field realization that can be evaluated exactly anywhere and
/// synthesized quickly on a grid.
class RandomField : public FieldFunction {
 public:
  /// Fast synthesis (OpenMP-parallel over rows).
  virtual void synthesize(const GridGeometry& geometry, std::span<double> out) const = 0;
  /// Serial direct summation node by node; the reference the fast path is checked against.
  void synthesize_reference(const GridGeometry& geometry, std::span<double> out) const;
};

/// Field on a flat domain (torus or plane); synthesis works on any tensor grid.
class PlanarField : public RandomField {
 public:
  /// out[i * xs.size() + j] = f(xs[j], ys[i])
  virtual void synthesize_grid(std::span<const double> xs, std::span<const double> ys,
                               std::span<double> out) const = 0;
  void synthesize(const GridGeometry& geometry, std::span<double> out) const override;
};

/// F_x(y) = f(x + y / scale): the field rescaled to unit frequency around x.
class ScaledPatch final : public PlanarField {
 public:
  ScaledPatch(std::shared_ptr<const PlanarField> base, double cx, double cy, double scale);
  double value(double u, double v) const override;
  void synthesize_grid(std::span<const double> xs, std::span<const double> ys,
                       std::span<double> out) const override;

 private:
  std::shared_ptr<const PlanarField> base_;
  double cx_, cy_, scale_;
};

enum class EnsembleKind { arw, torus_window, sphere, rwm };
enum class SphereBasis { real_basis, complex_bernoulli };

EnsembleKind parse_ensemble_kind(const std::string& text);
std::string to_string(EnsembleKind kind);
SphereBasis parse_sphere_basis(const std::string& text);
std::string to_string(SphereBasis basis);

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::arw;
  long n = 5;         // arw: |mu|^2 = n
  int dim = 2;        // torus_window
  double T = 30.0;    // torus_window
  double rho = 0.0;   // torus_window; <= 0 selects T / log T
  int ell = 20;       // sphere
  SphereBasis basis = SphereBasis::real_basis;
  int J = 256;        // rwm plane waves
};

/// Immutable, shareable description of an ensemble with its frequency set.
class Ensemble {
 public:
  explicit Ensemble(EnsembleSpec spec);

  const EnsembleSpec& spec() const { return spec_; }
  const FrequencySet& frequencies() const { return frequencies_; }
  std::size_t modes() const;
  /// sqrt(n), T, l, or 1.
  double frequency_scale() const;
  /// Physical angular wavenumber: 2 pi sqrt(n), 2 pi T, sqrt(l(l+1)), 2 pi.
  double wavenumber() const;
  bool planar() const { return spec_.kind != EnsembleKind::sphere; }
  std::string describe() const;

  /// torus2(N) for torus ensembles, sphere(N, 2N), plane_chart(N, side) for rwm.
  GridGeometry natural_geometry(int n, double chart_side = 4.0) const;
  /// Throws ValidationError when the geometry does not resolve the ensemble.
  void check_geometry(const GridGeometry& geometry) const;

  std::shared_ptr<const RandomField> draw(const CoefficientLaw& law,
                                          const SeedStream& stream) const;
  FieldSample sample(const CoefficientLaw& law, const GridGeometry& geometry,
                     const SeedStream& stream) const;
  FieldSample sample(std::shared_ptr<const RandomField> field, const GridGeometry& geometry,
                     EnsembleDescriptor descriptor) const;
  /// F_x on a plane chart centred at x = (cx, cy), unit frequency (planar ensembles).
  FieldSample sample_patch(std::shared_ptr<const RandomField> field, double cx, double cy,
                           const GridGeometry& chart, EnsembleDescriptor descriptor) const;
  EnsembleDescriptor descriptor(const CoefficientLaw& law, const SeedStream& stream) const;

  /// Deterministic field with explicit Hermitian coefficients, one per
  /// lexicographically positive frequency (torus ensembles).
  std::shared_ptr<const PlanarField> trig_field(
      std::span<const std::complex<double>> half_coefficients) const;

 private:
  EnsembleSpec spec_;
  FrequencySet frequencies_;
  std::vector<std::size_t> half_;
};

FieldSample sample_arw(long n, const CoefficientLaw& law, const GridGeometry& geometry,
                       const SeedStream& stream);
/// ARW with explicit coefficients on the positive half-lattice (test hook).
FieldSample sample_arw_with_coefficients(long n, const GridGeometry& geometry,
                                         std::span<const std::complex<double>> half_coefficients);
FieldSample sample_bandlimited_torus(int dim, double T, double rho, const CoefficientLaw& law,
                                     const GridGeometry& geometry, const SeedStream& stream);
FieldSample sample_sphere(int ell, const CoefficientLaw& law, const GridGeometry& geometry,
                          const SeedStream& stream, SphereBasis basis = SphereBasis::real_basis);
FieldSample sample_rwm_plane(int J, const GridGeometry& geometry, const SeedStream& stream,
                             const CoefficientLaw& law);

struct NodePair {
  int i0, j0, i1, j1;
};

struct CovarianceEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

/// Per-pair sample mean of f(a) f(b) over >= 100 samples with standard errors.
std::vector<CovarianceEstimate> empirical_covariance(std::span<const FieldSample> samples,
                                                     std::span<const NodePair> pairs);

/// One estimate pooled over pairs sharing a lag: per-sample spatial average,
/// then mean and standard error across samples.
CovarianceEstimate pooled_covariance(std::span<const FieldSample> samples,
                                     std::span<const NodePair> pairs);

}  // namespace nodalmc
