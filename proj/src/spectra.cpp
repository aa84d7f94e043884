#include "nodalmc/spectra.hpp"

#include <algorithm>
#include <cmath>

#include "nodalmc/error.hpp"
#include "nodalmc/specfun.hpp"

namespace nodalmc {
namespace {

long isqrt(long v) {
  if (v < 0) return -1;
  long r = static_cast<long>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

bool lexicographically_positive(const LatticeVector& k) {
  for (int c : k) {
    if (c != 0) return c > 0;
  }
  return false;
}

}  // namespace

std::string FrequencySet::kind_name() const {
  switch (kind) {
    case SpectrumKind::arw:
      return "arw";
    case SpectrumKind::torus_window:
      return "torus_window";
    case SpectrumKind::sphere:
      return "sphere";
  }
  return "unknown";
}

FrequencySet circle_points(long n) {
  if (n < 1) throw DomainError("circle_points: n must be >= 1");
  FrequencySet fs;
  fs.kind = SpectrumKind::arw;
  fs.dim = 2;
  fs.n = n;
  const long bound = isqrt(n);
  for (long a = -bound; a <= bound; ++a) {
    const long rest = n - a * a;
    const long b = isqrt(rest);
    if (b * b != rest) continue;
    fs.points.push_back({static_cast<int>(a), static_cast<int>(-b), 0});
    if (b != 0) fs.points.push_back({static_cast<int>(a), static_cast<int>(b), 0});
  }
  std::sort(fs.points.begin(), fs.points.end());
  fs.count = fs.points.size();
  return fs;
}

FrequencySet annulus_points(int dim, double T, double rho) {
  if (dim < 1 || dim > 3) throw DomainError("annulus_points: dim must be 1, 2 or 3");
  if (!(rho > 0.0 && rho <= T) || !std::isfinite(T)) {
    throw DomainError("annulus_points: need 0 < rho <= T");
  }
  FrequencySet fs;
  fs.kind = SpectrumKind::torus_window;
  fs.dim = dim;
  fs.T = T;
  fs.rho = rho;
  const double inner = T - rho;
  const double inner_sq = inner * inner;
  const double outer_sq = T * T * (1.0 + 1e-14);
  const int bound = static_cast<int>(std::floor(T));
  const int by = dim >= 2 ? bound : 0;
  const int bz = dim >= 3 ? bound : 0;
  for (int x = -bound; x <= bound; ++x) {
    for (int y = -by; y <= by; ++y) {
      for (int z = -bz; z <= bz; ++z) {
        const double r2 = static_cast<double>(x) * x + static_cast<double>(y) * y +
                          static_cast<double>(z) * z;
        if (r2 > inner_sq && r2 <= outer_sq) fs.points.push_back({x, y, z});
      }
    }
  }
  fs.count = fs.points.size();
  fs.flagged_empty = fs.points.empty();
  return fs;
}

FrequencySet sphere_degree(int ell) {
  if (ell < 0) throw DomainError("sphere_degree: l must be >= 0");
  FrequencySet fs;
  fs.kind = SpectrumKind::sphere;
  fs.dim = 2;
  fs.ell = ell;
  fs.count = 2 * static_cast<std::size_t>(ell) + 1;
  return fs;
}

double mode_count_normalizer(const FrequencySet& fs) {
  if (fs.count == 0) {
    throw ValidationError("mode_count_normalizer: empty frequency set (" + fs.kind_name() + ")");
  }
  return static_cast<double>(fs.count);
}

double asymptotic_mode_count(const FrequencySet& fs) {
  switch (fs.kind) {
    case SpectrumKind::torus_window: {
      const double omega = specfun::unit_ball_volume(fs.dim);
      return omega * (std::pow(fs.T, fs.dim) - std::pow(fs.T - fs.rho, fs.dim));
    }
    case SpectrumKind::sphere:
      return 2.0 * fs.ell + 1.0;
    case SpectrumKind::arw:
      return static_cast<double>(fs.count);
  }
  return 0.0;
}

std::vector<std::size_t> half_lattice(const FrequencySet& fs) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fs.points.size(); ++i) {
    if (lexicographically_positive(fs.points[i])) out.push_back(i);
  }
  return out;
}

double frequency_scale(const FrequencySet& fs) {
  switch (fs.kind) {
    case SpectrumKind::arw:
      return std::sqrt(static_cast<double>(fs.n));
    case SpectrumKind::torus_window:
      return fs.T;
    case SpectrumKind::sphere:
      return static_cast<double>(fs.ell);
  }
  return 0.0;
}

}  // namespace nodalmc
