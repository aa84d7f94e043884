#include "nodalmc/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "nodalmc/error.hpp"

namespace nodalmc::specfun {
namespace {

constexpr double kSeriesLimit = 8.0;

// sum_k (-1)^k (x/2)^(2k+nu) / (k! Gamma(k+nu+1))
double bessel_series(double nu, double x) {
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  const double half = 0.5 * x;
  double term = std::exp(nu * std::log(half) - std::lgamma(nu + 1.0));
  double sum = term;
  const double q = half * half;
  for (int k = 1; k < 500; ++k) {
    term *= -q / (k * (k + nu));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) && k > half) break;
  }
  return sum;
}

// Hankel expansion J_nu(x) = sqrt(2/(pi x)) (P cos chi - Q sin chi).
double bessel_asymptotic(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double p = 0.0;
  double q = 0.0;
  double coeff = 1.0;  // a_k(nu) / x^k
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 200; ++k) {
    if (k > 0) {
      const double odd = 2.0 * k - 1.0;
      coeff *= (mu - odd * odd) / (8.0 * k * x);
    }
    const double mag = std::abs(coeff);
    if (mag > prev) break;  // asymptotic series started diverging
    const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) {
      p += sign * coeff;
    } else {
      q += sign * coeff;
    }
    if (mag < 1e-17) break;
    prev = mag;
  }
  const double phase = (0.5 * nu + 0.25) * std::numbers::pi;
  const double sx = std::sin(x);
  const double cx = std::cos(x);
  const double cp = std::cos(phase);
  const double sp = std::sin(phase);
  const double cos_chi = cx * cp + sx * sp;
  const double sin_chi = sx * cp - cx * sp;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * cos_chi - q * sin_chi);
}

// Miller's algorithm: backward recurrence from an even start index well past
// max(n, x), normalized with J_0 + 2 sum_k J_2k = 1.
double bessel_miller(int n, double x) {
  const double top = std::max<double>(n, x);
  int start = static_cast<int>(top + 20.0 + std::sqrt(40.0 * top));
  start += start % 2;
  double next = 0.0;  // J_{k+1}
  double cur = 1e-300;  // J_k
  double norm = 0.0;
  double result = 0.0;
  for (int k = start; k > 0; --k) {
    const double prev = 2.0 * k / x * cur - next;  // J_{k-1}
    next = cur;
    cur = prev;
    if (std::abs(cur) > 1e250) {
      cur *= 1e-250;
      next *= 1e-250;
      norm *= 1e-250;
      result *= 1e-250;
    }
    if (k - 1 == n) result = cur;
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * cur;
  }
  norm += cur;  // J_0
  return result / norm;
}

// sqrt(2x/pi) j_k(x) via upward recurrence of the spherical Bessel functions,
// valid for x > k.
double bessel_half_integer_upward(int k, double x) {
  double j_prev = std::sin(x) / x;
  if (k == 0) return std::sqrt(2.0 * x / std::numbers::pi) * j_prev;
  double j_cur = std::sin(x) / (x * x) - std::cos(x) / x;
  for (int i = 1; i < k; ++i) {
    const double j_next = (2.0 * i + 1.0) / x * j_cur - j_prev;
    j_prev = j_cur;
    j_cur = j_next;
  }
  return std::sqrt(2.0 * x / std::numbers::pi) * j_cur;
}

}  // namespace

double bessel_j(double order, double x) {
  if (!std::isfinite(x) || x < 0.0) {
    throw DomainError("bessel_j: x must be finite and >= 0, got " + std::to_string(x));
  }
  const double twice = 2.0 * order;
  if (!(order >= 0.0) || std::abs(twice - std::round(twice)) > 1e-12) {
    throw DomainError("bessel_j: order must be a non-negative multiple of 1/2, got " +
                      std::to_string(order));
  }
  const long doubled = std::lround(twice);
  const double nu = 0.5 * static_cast<double>(doubled);

  if (doubled % 2 == 1) {
    const int k = static_cast<int>(doubled / 2);
    if (x <= kSeriesLimit || x <= nu) return bessel_series(nu, x);
    return bessel_half_integer_upward(k, x);
  }

  const int n = static_cast<int>(doubled / 2);
  if (x <= kSeriesLimit || x <= 0.5 * nu) return bessel_series(nu, x);
  if (x >= std::max(30.0, nu * nu)) return bessel_asymptotic(nu, x);
  return bessel_miller(n, x);
}

}  // namespace nodalmc::specfun
