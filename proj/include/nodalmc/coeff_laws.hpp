#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace nodalmc {

enum class LawKind { gaussian, rademacher, uniform, two_point };

/// Centred, unit-variance law of the i.i.d. field coefficients.
///
/// two_point(p) takes sqrt((1-p)/p) with probability p and -sqrt(p/(1-p))
/// otherwise; uniform is U(-sqrt 3, sqrt 3).
struct CoefficientLaw {
  LawKind kind = LawKind::gaussian;
  double p = 0.5;  // two_point only

  static CoefficientLaw gaussian() { return {LawKind::gaussian, 0.5}; }
  static CoefficientLaw rademacher() { return {LawKind::rademacher, 0.5}; }
  static CoefficientLaw uniform() { return {LawKind::uniform, 0.5}; }
  static CoefficientLaw two_point(double p);

  /// Accepts "gaussian", "rademacher", "uniform", "two-point:P".
  static CoefficientLaw parse(std::string_view text);
  std::string name() const;

  friend bool operator==(const CoefficientLaw&, const CoefficientLaw&) = default;
};

/// Stateless 64-bit avalanche mix (splitmix64 finalizer). Bijective.
std::uint64_t mix64(std::uint64_t z);

/// Counter-based seed derivation: one independent stream per replicate index.
struct SeedStream {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;

  /// mix64(master ^ mix64(index + golden)); distinct for distinct indices.
  std::uint64_t derived_seed() const;
};

/// Sequential draws from one stream. Not shared across threads.
class CoefficientSampler {
 public:
  CoefficientSampler(CoefficientLaw law, SeedStream stream);

  double next();
  /// (xi + i eta) / sqrt 2 with xi, eta i.i.d. from the law.
  std::complex<double> next_hermitian();
  /// Uniform on [lo, hi), for auxiliary randomness (directions, phases).
  double uniform(double lo, double hi);

  const CoefficientLaw& law() const { return law_; }

 private:
  CoefficientLaw law_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

std::vector<double> draw_real(const CoefficientLaw& law, const SeedStream& stream,
                              std::size_t count);

std::vector<std::complex<double>> draw_hermitian_pair(const CoefficientLaw& law,
                                                      const SeedStream& stream,
                                                      std::size_t count);

}  // namespace nodalmc
