#include <cmath>
#include <string>
#include <vector>

#include "nodalmc/error.hpp"
#include "nodalmc/specfun.hpp"

namespace nodalmc::specfun {
namespace {

void check_argument(int l, double x) {
  if (l < 0) throw DomainError("legendre: degree must be >= 0, got " + std::to_string(l));
  if (!(std::abs(x) <= 1.0)) {
    throw DomainError("legendre: |x| must be <= 1, got " + std::to_string(x));
  }
}

// Normalized recurrence in the degree for fixed m >= 0:
//   p_m^m     = -sqrt((2m-1)/(2m)) s p_{m-1}^{m-1},  p_0^0 = 1
//   p_{m+1}^m = sqrt(2m+1) x p_m^m
//   p_l^m     = ((2l-1) x p_{l-1}^m - sqrt((l-1)^2 - m^2) p_{l-2}^m) / sqrt(l^2 - m^2)
double normalized_nonnegative(int l, int m, double x) {
  const double s = std::sqrt((1.0 - x) * (1.0 + x));
  double pmm = 1.0;
  for (int k = 1; k <= m; ++k) {
    pmm *= -std::sqrt((2.0 * k - 1.0) / (2.0 * k)) * s;
  }
  if (l == m) return pmm;
  double prev = pmm;
  double cur = std::sqrt(2.0 * m + 1.0) * x * pmm;
  const double mm = static_cast<double>(m) * m;
  for (int k = m + 2; k <= l; ++k) {
    const double next =
        ((2.0 * k - 1.0) * x * cur - std::sqrt((k - 1.0) * (k - 1.0) - mm) * prev) /
        std::sqrt(static_cast<double>(k) * k - mm);
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

double legendre_assoc_normalized(int l, int m, double x) {
  check_argument(l, x);
  const int am = m < 0 ? -m : m;
  if (am > l) {
    throw DomainError("legendre: |m| must be <= l (l=" + std::to_string(l) +
                      ", m=" + std::to_string(m) + ")");
  }
  const double value = normalized_nonnegative(l, am, x);
  return (m < 0 && am % 2 == 1) ? -value : value;
}

void legendre_assoc_normalized_row(int l, double x, std::span<double> out) {
  check_argument(l, x);
  if (out.size() != static_cast<std::size_t>(l) + 1) {
    throw DomainError("legendre row: output span must hold l + 1 values");
  }
  for (int m = 0; m <= l; ++m) out[m] = normalized_nonnegative(l, m, x);
}

double legendre_p(int l, double x) {
  check_argument(l, x);
  return normalized_nonnegative(l, 0, x);
}

}  // namespace nodalmc::specfun
