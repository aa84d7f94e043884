#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace nodalmc {

enum class SpectrumKind { arw, torus_window, sphere };

using LatticeVector = std::array<int, 3>;  // unused trailing components are 0

/// An explicit frequency set: the lattice shell |mu|^2 = n, the annulus
/// T - rho < |k| <= T in Z^dim, or a spherical degree l (no explicit points).
struct FrequencySet {
  SpectrumKind kind = SpectrumKind::arw;
  int dim = 2;
  long n = 0;          // arw
  double T = 0.0;      // torus_window
  double rho = 0.0;    // torus_window
  int ell = 0;         // sphere
  std::vector<LatticeVector> points;  // sorted lexicographically
  std::size_t count = 0;
  bool flagged_empty = false;  // torus_window with no lattice point in range

  std::string kind_name() const;
};

/// {mu in Z^2 : |mu|^2 = n}; empty when n is not a sum of two squares.
FrequencySet circle_points(long n);

/// {k in Z^dim : T - rho < |k| <= T}, dim in {1, 2, 3}, 0 < rho <= T.
FrequencySet annulus_points(int dim, double T, double rho);

FrequencySet sphere_degree(int ell);

/// Exact number of modes, used to normalize fields to unit pointwise variance.
/// Throws ValidationError for an empty set.
double mode_count_normalizer(const FrequencySet& fs);

/// Continuum mode count omega_dim (T^dim - (T-rho)^dim) for a window; the
/// exact count for arw and the sphere. Diagnostic only.
double asymptotic_mode_count(const FrequencySet& fs);

/// Indices of the lexicographically positive representatives of the
/// antipodal pairs {k, -k} (first nonzero coordinate > 0).
std::vector<std::size_t> half_lattice(const FrequencySet& fs);

/// Frequency T of the set: sqrt(n), T, or l.
double frequency_scale(const FrequencySet& fs);

}  // namespace nodalmc
