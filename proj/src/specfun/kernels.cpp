#include <cmath>
#include <numbers>
#include <string>

#include "nodalmc/error.hpp"
#include "nodalmc/specfun.hpp"

namespace nodalmc::specfun {
namespace {

// Below this value of 2 pi r the closed form is replaced by its Taylor series.
constexpr double kSmallArgument = 1e-3;

// Monochromatic kernel 2^L Gamma(n/2) J_L(z) / z^L with z = 2 pi r, L = (n-2)/2.
double sphere_kernel(int n, double r) {
  const double z = 2.0 * std::numbers::pi * r;
  const double half_n = 0.5 * n;
  if (z < kSmallArgument) {
    // sum_k (-1)^k Gamma(n/2) / (k! Gamma(k + n/2)) (z/2)^(2k)
    const double q = 0.25 * z * z;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k <= 3; ++k) {
      term *= -q / (k * (k - 1 + half_n));
      sum += term;
    }
    return sum;
  }
  const double order = 0.5 * (n - 2);
  const double prefactor =
      std::exp(order * std::log(2.0) + std::lgamma(half_n) - order * std::log(z));
  return prefactor * bessel_j(order, z);
}

// sum_{k=0}^{count-1} u^k
double geometric_sum(double u, int count) {
  double sum = 0.0;
  double power = 1.0;
  for (int k = 0; k < count; ++k) {
    sum += power;
    power *= u;
  }
  return sum;
}

}  // namespace

void validate(const KernelSpec& spec) {
  if (spec.dimension < 2) {
    throw DomainError("kernel dimension must be >= 2, got " + std::to_string(spec.dimension));
  }
  if (!(spec.inner_fraction >= 0.0 && spec.inner_fraction <= 1.0)) {
    throw DomainError("inner_fraction must lie in [0, 1], got " +
                      std::to_string(spec.inner_fraction));
  }
}

double isotropic_kernel(const KernelSpec& spec, double r) {
  validate(spec);
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw DomainError("isotropic_kernel: r must be finite and >= 0");
  }
  const int n = spec.dimension;
  if (r == 0.0) return 1.0;
  if (spec.inner_fraction == 1.0) return sphere_kernel(n, r);

  const double inner = spec.inner_fraction;
  const double weight = n / (1.0 - std::pow(inner, n));
  return integrate(
      [&](double rho) { return weight * sphere_kernel(n, rho * r) * std::pow(rho, n - 1); },
      inner, 1.0, 1e-9);
}

double spectral_second_moment(const KernelSpec& spec) {
  validate(spec);
  const int n = spec.dimension;
  const double u = spec.inner_fraction;
  // E|xi|^2 = n/(n+2) (1 - u^(n+2)) / (1 - u^n), written without cancellation.
  const double mean_square = n / (n + 2.0) * geometric_sum(u, n + 2) / geometric_sum(u, n);
  const double two_pi = 2.0 * std::numbers::pi;
  return two_pi * two_pi * mean_square / n;
}

double kac_rice_density(const KernelSpec& spec) {
  const int n = spec.dimension;
  const double s = std::sqrt(spectral_second_moment(spec));
  return s * std::exp(std::lgamma(0.5 * (n + 1)) - std::lgamma(0.5 * n)) /
         std::sqrt(std::numbers::pi);
}

double unit_ball_volume(int n) {
  if (n < 1) throw DomainError("unit_ball_volume: n must be >= 1");
  return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

}  // namespace nodalmc::specfun
