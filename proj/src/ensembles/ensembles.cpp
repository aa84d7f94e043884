#include "nodalmc/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <sstream>

#include "nodalmc/error.hpp"
#include "nodalmc/kernels.hpp"
#include "nodalmc/specfun.hpp"

namespace nodalmc {
namespace {

constexpr double kRealityTolerance = 1e-10;

class TrigField final : public PlanarField {
 public:
  TrigField(std::vector<kernels::TrigMode> modes, double scale)
      : modes_(std::move(modes)), scale_(scale) {}

  double value(double x, double y) const override {
    std::complex<double> sum{0.0, 0.0};
    for (const auto& m : modes_) sum += m.c * kernels::unit_phase(m.kx * x + m.ky * y);
    return scale_ * sum.real();
  }

  void synthesize_grid(std::span<const double> xs, std::span<const double> ys,
                       std::span<double> out) const override {
    const double residue = kernels::trig_sum_separable(modes_, scale_, xs, ys, out);
    if (!(residue < kRealityTolerance)) {
      throw ValidationError("trigonometric synthesis is not real: imaginary residue " +
                            std::to_string(residue));
    }
  }

 private:
  std::vector<kernels::TrigMode> modes_;
  double scale_;
};

class PlaneWaveField final : public PlanarField {
 public:
  explicit PlaneWaveField(std::vector<kernels::PlaneWave> waves) : waves_(std::move(waves)) {}

  double value(double x, double y) const override {
    double sum = 0.0;
    for (const auto& w : waves_) {
      sum += w.amplitude * std::cos(2.0 * std::numbers::pi * (w.kx * x + w.ky * y) + w.phase);
    }
    return sum;
  }

  void synthesize_grid(std::span<const double> xs, std::span<const double> ys,
                       std::span<double> out) const override {
    kernels::plane_wave_sum(waves_, xs, ys, out);
  }

 private:
  std::vector<kernels::PlaneWave> waves_;
};

// f(phi, theta) = sum_{m=0}^{l} p_l^m(cos theta) (a_m cos(m phi) + b_m sin(m phi))
class SphereField final : public RandomField {
 public:
  SphereField(int ell, std::vector<double> a, std::vector<double> b)
      : ell_(ell), a_(std::move(a)), b_(std::move(b)) {}

  double value(double phi, double theta) const override {
    std::vector<double> p(static_cast<std::size_t>(ell_) + 1);
    specfun::legendre_assoc_normalized_row(ell_, std::clamp(std::cos(theta), -1.0, 1.0), p);
    double sum = 0.0;
    for (int m = 0; m <= ell_; ++m) {
      sum += p[m] * (a_[m] * std::cos(m * phi) + b_[m] * std::sin(m * phi));
    }
    return sum;
  }

  void synthesize(const GridGeometry& geometry, std::span<double> out) const override {
    if (geometry.kind() != GridKind::sphere) {
      throw DomainError("spherical harmonics need a sphere grid");
    }
    std::vector<double> thetas(geometry.rows());
    for (int i = 0; i < geometry.rows(); ++i) thetas[i] = geometry.v(i);
    kernels::legendre_fourier_sum(ell_, a_, b_, thetas, geometry.cols(), out);
  }

 private:
  int ell_;
  std::vector<double> a_;
  std::vector<double> b_;
};

double max_frequency_norm(const FrequencySet& fs) {
  double best = 0.0;
  for (const auto& k : fs.points) {
    best = std::max(best, std::sqrt(static_cast<double>(k[0]) * k[0] +
                                    static_cast<double>(k[1]) * k[1] +
                                    static_cast<double>(k[2]) * k[2]));
  }
  return best;
}

}  // namespace

FieldSample make_sample(const GridGeometry& geometry, std::shared_ptr<const FieldFunction> f,
                        double wavenumber, EnsembleDescriptor descriptor) {
  FieldSample s;
  s.geometry = geometry;
  s.values.resize(geometry.size());
  for (int i = 0; i < geometry.rows(); ++i) {
    for (int j = 0; j < geometry.cols(); ++j) {
      s.values[geometry.index(i, j)] = f->value(geometry.u(j), geometry.v(i));
    }
  }
  s.ensemble = std::move(descriptor);
  s.wavenumber = wavenumber;
  s.frequency_scale = wavenumber / (2.0 * std::numbers::pi);
  s.function = std::move(f);
  return s;
}

void RandomField::synthesize_reference(const GridGeometry& geometry, std::span<double> out) const {
  for (int i = 0; i < geometry.rows(); ++i) {
    for (int j = 0; j < geometry.cols(); ++j) {
      out[geometry.index(i, j)] = value(geometry.u(j), geometry.v(i));
    }
  }
}

void PlanarField::synthesize(const GridGeometry& geometry, std::span<double> out) const {
  if (geometry.kind() == GridKind::sphere) {
    throw DomainError("planar field cannot be synthesized on a sphere grid");
  }
  std::vector<double> xs(geometry.cols());
  std::vector<double> ys(geometry.rows());
  for (int j = 0; j < geometry.cols(); ++j) xs[j] = geometry.u(j);
  for (int i = 0; i < geometry.rows(); ++i) ys[i] = geometry.v(i);
  synthesize_grid(xs, ys, out);
}

ScaledPatch::ScaledPatch(std::shared_ptr<const PlanarField> base, double cx, double cy,
                         double scale)
    : base_(std::move(base)), cx_(cx), cy_(cy), scale_(scale) {
  if (!(scale_ > 0.0)) throw DomainError("ScaledPatch: scale must be > 0");
}

double ScaledPatch::value(double u, double v) const {
  return base_->value(cx_ + u / scale_, cy_ + v / scale_);
}

void ScaledPatch::synthesize_grid(std::span<const double> xs, std::span<const double> ys,
                                  std::span<double> out) const {
  std::vector<double> mx(xs.size());
  std::vector<double> my(ys.size());
  for (std::size_t j = 0; j < xs.size(); ++j) mx[j] = cx_ + xs[j] / scale_;
  for (std::size_t i = 0; i < ys.size(); ++i) my[i] = cy_ + ys[i] / scale_;
  base_->synthesize_grid(mx, my, out);
}

EnsembleKind parse_ensemble_kind(const std::string& text) {
  if (text == "arw") return EnsembleKind::arw;
  if (text == "torus-window" || text == "torus_window") return EnsembleKind::torus_window;
  if (text == "sphere") return EnsembleKind::sphere;
  if (text == "rwm") return EnsembleKind::rwm;
  throw DomainError("unknown ensemble '" + text + "'");
}

std::string to_string(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::arw:
      return "arw";
    case EnsembleKind::torus_window:
      return "torus-window";
    case EnsembleKind::sphere:
      return "sphere";
    case EnsembleKind::rwm:
      return "rwm";
  }
  return "unknown";
}

SphereBasis parse_sphere_basis(const std::string& text) {
  if (text == "real" || text == "real_basis") return SphereBasis::real_basis;
  if (text == "complex-bernoulli" || text == "complex_bernoulli") {
    return SphereBasis::complex_bernoulli;
  }
  throw DomainError("unknown sphere basis '" + text + "'");
}

std::string to_string(SphereBasis basis) {
  return basis == SphereBasis::real_basis ? "real" : "complex-bernoulli";
}

Ensemble::Ensemble(EnsembleSpec spec) : spec_(spec) {
  switch (spec_.kind) {
    case EnsembleKind::arw:
      frequencies_ = circle_points(spec_.n);
      if (frequencies_.count == 0) {
        throw ValidationError("n = " + std::to_string(spec_.n) +
                              " is not a sum of two squares");
      }
      break;
    case EnsembleKind::torus_window:
      if (spec_.dim != 1 && spec_.dim != 2) {
        throw DomainError("torus window fields are sampled in dim 1 or 2");
      }
      if (spec_.rho <= 0.0) {
        if (!(spec_.T > 1.0)) throw DomainError("default window rho = T / log T needs T > 1");
        spec_.rho = spec_.T / std::log(spec_.T);
      }
      frequencies_ = annulus_points(spec_.dim, spec_.T, spec_.rho);
      if (frequencies_.flagged_empty) {
        throw ValidationError("energy window contains no lattice points");
      }
      break;
    case EnsembleKind::sphere:
      if (spec_.ell < 1) throw DomainError("sphere degree must be >= 1");
      frequencies_ = sphere_degree(spec_.ell);
      break;
    case EnsembleKind::rwm:
      if (spec_.J < 1) throw DomainError("rwm needs J >= 1 plane waves");
      break;
  }
  half_ = half_lattice(frequencies_);
}

std::size_t Ensemble::modes() const {
  return spec_.kind == EnsembleKind::rwm ? static_cast<std::size_t>(spec_.J)
                                         : frequencies_.count;
}

double Ensemble::frequency_scale() const {
  return spec_.kind == EnsembleKind::rwm ? 1.0 : nodalmc::frequency_scale(frequencies_);
}

double Ensemble::wavenumber() const {
  switch (spec_.kind) {
    case EnsembleKind::sphere:
      return std::sqrt(static_cast<double>(spec_.ell) * (spec_.ell + 1));
    case EnsembleKind::rwm:
      return 2.0 * std::numbers::pi;
    default:
      return 2.0 * std::numbers::pi * max_frequency_norm(frequencies_);
  }
}

std::string Ensemble::describe() const {
  std::ostringstream os;
  switch (spec_.kind) {
    case EnsembleKind::arw:
      os << "n=" << spec_.n;
      break;
    case EnsembleKind::torus_window:
      os << "dim=" << spec_.dim << ",T=" << spec_.T << ",rho=" << spec_.rho;
      break;
    case EnsembleKind::sphere:
      os << "l=" << spec_.ell << ",basis=" << to_string(spec_.basis);
      break;
    case EnsembleKind::rwm:
      os << "J=" << spec_.J;
      break;
  }
  return os.str();
}

GridGeometry Ensemble::natural_geometry(int n, double chart_side) const {
  switch (spec_.kind) {
    case EnsembleKind::sphere:
      return GridGeometry::sphere(n, 2 * n);
    case EnsembleKind::rwm:
      return GridGeometry::plane_chart(n, chart_side);
    default:
      return GridGeometry::torus2(n);
  }
}

void Ensemble::check_geometry(const GridGeometry& geometry) const {
  switch (spec_.kind) {
    case EnsembleKind::arw:
    case EnsembleKind::torus_window: {
      if (geometry.kind() == GridKind::sphere) {
        throw ValidationError("torus ensembles cannot be sampled on a sphere grid");
      }
      if (geometry.kind() == GridKind::torus2) {
        const double top = max_frequency_norm(frequencies_);
        if (!(geometry.cols() > 4.0 * top)) {
          throw ValidationError("Nyquist violation: grid N = " + std::to_string(geometry.cols()) +
                                " must exceed 4 * max|k| = " + std::to_string(4.0 * top));
        }
      }
      break;
    }
    case EnsembleKind::sphere: {
      if (geometry.kind() != GridKind::sphere) {
        throw ValidationError("spherical harmonics need a sphere grid");
      }
      const double per_wavelength = 2.0 * std::numbers::pi / wavenumber() / geometry.max_step();
      if (per_wavelength < 2.0) {
        throw ValidationError("sphere grid resolves fewer than 2 points per wavelength");
      }
      if (per_wavelength < 4.0) {
        std::clog << "warning: sphere grid has " << per_wavelength
                  << " points per wavelength (< 4)\n";
      }
      break;
    }
    case EnsembleKind::rwm:
      if (geometry.kind() != GridKind::plane_chart) {
        throw ValidationError("random monochromatic waves are sampled on a plane chart");
      }
      break;
  }
}

std::shared_ptr<const PlanarField> Ensemble::trig_field(
    std::span<const std::complex<double>> half_coefficients) const {
  if (spec_.kind != EnsembleKind::arw && spec_.kind != EnsembleKind::torus_window) {
    throw DomainError("trig_field is defined for torus ensembles only");
  }
  if (half_coefficients.size() != half_.size()) {
    throw DomainError("trig_field: expected " + std::to_string(half_.size()) + " coefficients");
  }
  std::vector<kernels::TrigMode> modes;
  modes.reserve(2 * half_.size());
  for (std::size_t h = 0; h < half_.size(); ++h) {
    const auto& k = frequencies_.points[half_[h]];
    const auto c = half_coefficients[h];
    modes.push_back({k[0], k[1], c});
    modes.push_back({-k[0], -k[1], std::conj(c)});
  }
  const double scale = 1.0 / std::sqrt(mode_count_normalizer(frequencies_));
  return std::make_shared<TrigField>(std::move(modes), scale);
}

std::shared_ptr<const RandomField> Ensemble::draw(const CoefficientLaw& law,
                                                  const SeedStream& stream) const {
  switch (spec_.kind) {
    case EnsembleKind::arw:
    case EnsembleKind::torus_window:
      return trig_field(draw_hermitian_pair(law, stream, half_.size()));
    case EnsembleKind::sphere: {
      const int ell = spec_.ell;
      std::vector<double> a(ell + 1, 0.0);
      std::vector<double> b(ell + 1, 0.0);
      CoefficientSampler sampler(law, stream);
      if (spec_.basis == SphereBasis::real_basis) {
        a[0] = sampler.next();
        for (int m = 1; m <= ell; ++m) {
          a[m] = std::numbers::sqrt2 * sampler.next();
          b[m] = std::numbers::sqrt2 * sampler.next();
        }
      } else {
        // Real part of sum_{m=-l}^{l} c_m Y_lm / sqrt(2l+1), using
        // p_l^{-m} = (-1)^m p_l^m.
        std::vector<double> c(2 * ell + 1);
        for (auto& v : c) v = sampler.next();
        a[0] = c[ell];
        for (int m = 1; m <= ell; ++m) {
          a[m] = c[ell + m] + ((m % 2 == 0) ? 1.0 : -1.0) * c[ell - m];
        }
      }
      return std::make_shared<SphereField>(ell, std::move(a), std::move(b));
    }
    case EnsembleKind::rwm: {
      CoefficientSampler sampler(law, stream);
      std::vector<kernels::PlaneWave> waves(spec_.J);
      const double amp = std::sqrt(2.0 / spec_.J);
      for (auto& w : waves) {
        const double a = sampler.next();
        const double angle = sampler.uniform(0.0, 2.0 * std::numbers::pi);
        w.phase = sampler.uniform(0.0, 2.0 * std::numbers::pi);
        w.kx = std::cos(angle);
        w.ky = std::sin(angle);
        w.amplitude = amp * a;
      }
      return std::make_shared<PlaneWaveField>(std::move(waves));
    }
  }
  return nullptr;
}

EnsembleDescriptor Ensemble::descriptor(const CoefficientLaw& law,
                                        const SeedStream& stream) const {
  return {to_string(spec_.kind), describe(), law.name(), stream.master_seed,
          stream.stream_index};
}

FieldSample Ensemble::sample(std::shared_ptr<const RandomField> field,
                             const GridGeometry& geometry, EnsembleDescriptor descriptor) const {
  check_geometry(geometry);
  FieldSample s;
  s.geometry = geometry;
  s.values.resize(geometry.size());
  field->synthesize(geometry, s.values);
  s.ensemble = std::move(descriptor);
  s.frequency_scale = frequency_scale();
  s.wavenumber = wavenumber();
  s.function = std::move(field);
  return s;
}

FieldSample Ensemble::sample(const CoefficientLaw& law, const GridGeometry& geometry,
                             const SeedStream& stream) const {
  check_geometry(geometry);
  return sample(draw(law, stream), geometry, descriptor(law, stream));
}

FieldSample Ensemble::sample_patch(std::shared_ptr<const RandomField> field, double cx,
                                   double cy, const GridGeometry& chart,
                                   EnsembleDescriptor descriptor) const {
  auto planar = std::dynamic_pointer_cast<const PlanarField>(field);
  if (!planar || chart.kind() != GridKind::plane_chart) {
    throw ValidationError("scaled patches need a planar ensemble and a plane chart");
  }
  const double scale = frequency_scale();
  auto patch = std::make_shared<ScaledPatch>(std::move(planar), cx, cy, scale);
  FieldSample s;
  s.geometry = chart;
  s.values.resize(chart.size());
  patch->synthesize(chart, s.values);
  s.ensemble = std::move(descriptor);
  s.frequency_scale = 1.0;
  s.wavenumber = wavenumber() / scale;
  s.function = std::move(patch);
  return s;
}

FieldSample sample_arw(long n, const CoefficientLaw& law, const GridGeometry& geometry,
                       const SeedStream& stream) {
  EnsembleSpec spec;
  spec.kind = EnsembleKind::arw;
  spec.n = n;
  return Ensemble(spec).sample(law, geometry, stream);
}

FieldSample sample_arw_with_coefficients(long n, const GridGeometry& geometry,
                                         std::span<const std::complex<double>> half_coefficients) {
  EnsembleSpec spec;
  spec.kind = EnsembleKind::arw;
  spec.n = n;
  const Ensemble ensemble(spec);
  EnsembleDescriptor d{"arw", ensemble.describe(), "fixed", 0, 0};
  return ensemble.sample(ensemble.trig_field(half_coefficients), geometry, d);
}

FieldSample sample_bandlimited_torus(int dim, double T, double rho, const CoefficientLaw& law,
                                     const GridGeometry& geometry, const SeedStream& stream) {
  EnsembleSpec spec;
  spec.kind = EnsembleKind::torus_window;
  spec.dim = dim;
  spec.T = T;
  spec.rho = rho;
  return Ensemble(spec).sample(law, geometry, stream);
}

FieldSample sample_sphere(int ell, const CoefficientLaw& law, const GridGeometry& geometry,
                          const SeedStream& stream, SphereBasis basis) {
  EnsembleSpec spec;
  spec.kind = EnsembleKind::sphere;
  spec.ell = ell;
  spec.basis = basis;
  return Ensemble(spec).sample(law, geometry, stream);
}

FieldSample sample_rwm_plane(int J, const GridGeometry& geometry, const SeedStream& stream,
                             const CoefficientLaw& law) {
  EnsembleSpec spec;
  spec.kind = EnsembleKind::rwm;
  spec.J = J;
  return Ensemble(spec).sample(law, geometry, stream);
}

}  // namespace nodalmc
