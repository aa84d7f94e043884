#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "nodalmc/error.hpp"
#include "nodalmc/specfun.hpp"

using namespace nodalmc;
using namespace nodalmc::specfun;
using boost::multiprecision::cpp_rational;

namespace {

constexpr double pi = std::numbers::pi;

// Power series of J_0 in long double, the independent root-finding oracle.
long double j0_series(long double x) {
  long double term = 1.0L;
  long double sum = 1.0L;
  const long double q = -x * x / 4.0L;
  for (int k = 1; k < 80; ++k) {
    term *= q / (static_cast<long double>(k) * k);
    sum += term;
  }
  return sum;
}

// Exact rational P_l^m(x) via Rodrigues:
// P_l^m(x) = (-1)^m (1-x^2)^{m/2} d^{l+m}/dx^{l+m} (x^2-1)^l / (2^l l!).
// Returns the rational part R with P_l^m(x) = R * (1-x^2)^{m/2}.
cpp_rational rodrigues_polynomial_part(int l, int m, const cpp_rational& x) {
  std::vector<cpp_rational> poly(2 * l + 1, cpp_rational(0));
  // (x^2 - 1)^l = sum_k C(l,k) x^{2k} (-1)^{l-k}
  cpp_rational binom = 1;
  for (int k = 0; k <= l; ++k) {
    poly[2 * k] = ((l - k) % 2 == 0 ? binom : -binom);
    binom = binom * (l - k) / (k + 1);
  }
  for (int d = 0; d < l + m; ++d) {
    std::vector<cpp_rational> next(poly.size(), cpp_rational(0));
    for (std::size_t p = 1; p < poly.size(); ++p) next[p - 1] = poly[p] * static_cast<int>(p);
    poly = next;
  }
  cpp_rational value = 0;
  cpp_rational power = 1;
  for (const auto& c : poly) {
    value += c * power;
    power *= x;
  }
  cpp_rational denom = 1;
  for (int k = 1; k <= l; ++k) denom *= 2 * k;  // 2^l l!
  value /= denom;
  return (m % 2 == 0) ? value : cpp_rational(-value);
}

double rodrigues_normalized(int l, int m, const cpp_rational& x) {
  const cpp_rational r = rodrigues_polynomial_part(l, m, x);
  cpp_rational ratio = 1;  // (l-m)!/(l+m)!
  for (int k = l - m + 1; k <= l + m; ++k) ratio /= k;
  cpp_rational one_minus = 1 - x * x;
  cpp_rational s2 = r * r * ratio;
  for (int k = 0; k < m; ++k) s2 *= one_minus;
  const double magnitude = std::sqrt(static_cast<double>(s2));
  return r < 0 ? -magnitude : magnitude;
}

// Independent 2-d quadrature of the annulus kernel in polar coordinates
// (composite Simpson in both variables).
double annulus_kernel_quadrature(double ups, double r) {
  const int nr = 400;
  const int nphi = 800;
  const double hr = (1.0 - ups) / nr;
  const double hphi = pi / nphi;  // symmetric in phi -> integrate over [0, pi]
  double total = 0.0;
  for (int a = 0; a <= nr; ++a) {
    const double rho = ups + a * hr;
    const double wa = (a == 0 || a == nr) ? 1.0 : (a % 2 ? 4.0 : 2.0);
    double inner = 0.0;
    for (int b = 0; b <= nphi; ++b) {
      const double wb = (b == 0 || b == nphi) ? 1.0 : (b % 2 ? 4.0 : 2.0);
      inner += wb * std::cos(2.0 * pi * r * rho * std::cos(b * hphi));
    }
    total += wa * rho * inner * hphi / 3.0 * 2.0;
  }
  total *= hr / 3.0;
  return total / (pi * (1.0 - ups * ups));
}

}  // namespace

TEST_CASE("bessel_j spot values") {
  CHECK(bessel_j(0, 0) == 1.0);
  for (double x : {0.5, 1.0, 2.0}) {
    CHECK(bessel_j(0.5, x) == doctest::Approx(std::sqrt(2.0 / (pi * x)) * std::sin(x)).epsilon(1e-13));
  }
}

TEST_CASE("bessel_j first zero of J0 from the series oracle") {
  long double lo = 2.0L;
  long double hi = 3.0L;
  for (int it = 0; it < 200; ++it) {
    const long double mid = 0.5L * (lo + hi);
    if ((j0_series(lo) > 0) == (j0_series(mid) > 0)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double root = static_cast<double>(0.5L * (lo + hi));
  CHECK(root == doctest::Approx(2.404825557695773).epsilon(1e-14));
  CHECK(std::abs(bessel_j(0, root)) < 1e-10);
}

TEST_CASE("bessel_j matches the standard library to 10 significant digits on [0, 1000]") {
  for (double nu : {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 5.0, 7.5, 10.0, 20.0}) {
    for (double x = 0.0; x <= 1000.0; x += (x < 50.0 ? 0.173 : 3.71)) {
      const double ref = std::cyl_bessel_j(nu, x);
      const double got = bessel_j(nu, x);
      INFO("nu=" << nu << " x=" << x);
      // Relative 1e-10, absolute floor where J is tiny or crosses zero.
      CHECK(std::abs(got - ref) <= 1e-10 * std::abs(ref) + 1e-12);
    }
  }
}

TEST_CASE("bessel_j recurrence J_{v-1} + J_{v+1} = (2v/x) J_v") {
  for (double nu : {1.0, 1.5, 2.0, 3.5, 6.0, 10.0}) {
    for (double x = 0.3; x < 200.0; x *= 1.37) {
      const double lhs = bessel_j(nu - 1, x) + bessel_j(nu + 1, x);
      const double rhs = 2.0 * nu / x * bessel_j(nu, x);
      CHECK(std::abs(lhs - rhs) < 1e-9);
    }
  }
}

TEST_CASE("bessel_j rejects bad input") {
  CHECK_THROWS_AS(bessel_j(0, -1.0), DomainError);
  CHECK_THROWS_AS(bessel_j(0.3, 1.0), DomainError);
  CHECK_THROWS_AS(bessel_j(-1.0, 1.0), DomainError);
}

TEST_CASE("isotropic kernel closed forms") {
  for (double r : {0.0, 1e-5, 0.05, 0.3, 1.1, 4.7}) {
    CHECK(isotropic_kernel({2, 1.0}, r) == doctest::Approx(std::cyl_bessel_j(0.0, 2 * pi * r)).epsilon(1e-12));
    const double x = 2 * pi * r;
    const double sinc = r == 0.0 ? 1.0 : std::sin(x) / x;
    CHECK(isotropic_kernel({3, 1.0}, r) == doctest::Approx(sinc).epsilon(1e-12));
  }
  CHECK(isotropic_kernel({5, 1.0}, 0.0) == 1.0);
  CHECK(isotropic_kernel({2, 0.8}, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(isotropic_kernel({2, 1.0}, -0.1), DomainError);
}

TEST_CASE("annulus kernel against 2-d quadrature") {
  CHECK(std::abs(isotropic_kernel({2, 0.8}, 0.3) - annulus_kernel_quadrature(0.8, 0.3)) < 1e-8);
  CHECK(std::abs(isotropic_kernel({2, 0.5}, 1.7) - annulus_kernel_quadrature(0.5, 1.7)) < 1e-8);
  CHECK(std::abs(isotropic_kernel({2, 0.0}, 0.9) - annulus_kernel_quadrature(0.0, 0.9)) < 1e-8);
}

TEST_CASE("kernel series branch is continuous across its threshold") {
  // Just below and above the series threshold 2 pi r = 1e-3.
  for (double r : {1.4e-4, 1.6e-4}) {
    CHECK(isotropic_kernel({2, 1.0}, r) == doctest::Approx(std::cyl_bessel_j(0.0, 2 * pi * r)).epsilon(1e-15));
    CHECK(std::abs(isotropic_kernel({2, 0.9}, r) - annulus_kernel_quadrature(0.9, r)) < 1e-9);
    CHECK(isotropic_kernel({4, 1.0}, r) == doctest::Approx(2.0 * std::cyl_bessel_j(1.0, 2 * pi * r) / (2 * pi * r)).epsilon(1e-13));
  }
}

TEST_CASE("kernel second derivative at zero is -(2 pi)^2 / n") {
  const double h = 1e-4;
  for (int n = 2; n <= 6; ++n) {
    const KernelSpec k{n, 1.0};
    // K is even, so the central difference is 2 (K(h) - K(0)) / h^2.
    const double fd = 2.0 * (isotropic_kernel(k, h) - isotropic_kernel(k, 0.0)) / (h * h);
    CHECK(std::abs(-fd - (2 * pi) * (2 * pi) / n) < 1e-6);
    CHECK(spectral_second_moment(k) == doctest::Approx((2 * pi) * (2 * pi) / n).epsilon(1e-14));
  }
}

TEST_CASE("kernel bounded by one") {
  for (int n = 2; n <= 5; ++n) {
    for (double ups : {1.0, 0.7, 0.0}) {
      for (double r = 0.0; r < 6.0; r += 0.0371) CHECK(std::abs(isotropic_kernel({n, ups}, r)) <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("kac-rice constants") {
  CHECK(kac_rice_density({2, 1.0}) == doctest::Approx(pi / std::sqrt(2.0)).epsilon(1e-13));
  CHECK(kac_rice_density({3, 1.0}) == doctest::Approx(4.0 / std::sqrt(3.0)).epsilon(1e-13));
  // The annulus branch is continuous at the monochromatic limit.
  CHECK(kac_rice_density({2, 1.0 - 1e-9}) == doctest::Approx(kac_rice_density({2, 1.0})).epsilon(1e-8));
  CHECK(kac_rice_density({3, 1.0 - 1e-9}) == doctest::Approx(kac_rice_density({3, 1.0})).epsilon(1e-8));
  // Full disc: E|xi|^2 = 1/2, s^2 = (2 pi)^2 / 4, density = s / 2.
  CHECK(kac_rice_density({2, 0.0}) == doctest::Approx(pi / 2.0).epsilon(1e-13));
  CHECK_THROWS_AS(kac_rice_density({1, 1.0}), DomainError);
  CHECK_THROWS_AS(kac_rice_density({2, 1.5}), DomainError);
}

TEST_CASE("normalized Legendre spot values") {
  CHECK(legendre_assoc_normalized(0, 0, 0.3) == 1.0);
  CHECK(legendre_assoc_normalized(1, 0, 0.5) == doctest::Approx(0.5));
  CHECK_THROWS_AS(legendre_assoc_normalized(2, 3, 0.1), DomainError);
  CHECK_THROWS_AS(legendre_assoc_normalized(2, 1, 1.1), DomainError);
}

TEST_CASE("normalized Legendre matches the exact Rodrigues oracle for l <= 12") {
  const cpp_rational x3(3, 10);
  CHECK(legendre_assoc_normalized(10, 7, 0.3) == doctest::Approx(rodrigues_normalized(10, 7, x3)).epsilon(1e-13));
  for (int l = 0; l <= 12; ++l) {
    for (int m = 0; m <= l; ++m) {
      for (int num : {-9, -4, 1, 3, 7}) {
        const cpp_rational x(num, 10);
        const double ref = rodrigues_normalized(l, m, x);
        INFO("l=" << l << " m=" << m << " x=" << num / 10.0);
        CHECK(std::abs(legendre_assoc_normalized(l, m, num / 10.0) - ref) < 1e-13);
        const double neg = (m % 2 == 0 ? 1.0 : -1.0) * ref;
        CHECK(std::abs(legendre_assoc_normalized(l, -m, num / 10.0) - neg) < 1e-13);
      }
    }
  }
}

TEST_CASE("normalized Legendre orthonormality") {
  // Fixed m: (2l+1)/2 * int p_l^m p_l'^m dx = delta_{l l'}.
  const auto rule = gauss_legendre(64);
  for (int m = 0; m <= 20; ++m) {
    for (int l = m; l <= 20; ++l) {
      for (int lp = m; lp <= 20; ++lp) {
        double sum = 0.0;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
          const double x = rule.nodes[q];
          sum += rule.weights[q] * legendre_assoc_normalized(l, m, x) * legendre_assoc_normalized(lp, m, x);
        }
        CHECK(std::abs(std::sqrt((2.0 * l + 1) / 2.0 * (2.0 * lp + 1) / 2.0) * sum - (l == lp ? 1.0 : 0.0)) < 1e-8);
      }
    }
  }
}

TEST_CASE("spherical harmonics built on the factors are orthonormal on the sphere") {
  // Y_lm = sqrt((2l+1)/(4 pi)) p_l^m(cos t) e^{i m phi}; orthogonality in m
  // comes from the azimuthal integral, checked with an exact trapezoid rule.
  const int l = 6;
  const auto rule = gauss_legendre(32);
  const int nphi = 32;
  for (int m = -l; m <= l; ++m) {
    for (int mp = -l; mp <= l; ++mp) {
      for (int lp : {4, 6}) {
        if (std::abs(mp) > lp) continue;
        double re = 0.0;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
          const double x = rule.nodes[q];
          const double radial = legendre_assoc_normalized(l, m, x) * legendre_assoc_normalized(lp, mp, x);
          double az = 0.0;
          for (int j = 0; j < nphi; ++j) az += std::cos((m - mp) * 2.0 * pi * j / nphi);
          re += rule.weights[q] * radial * az * 2.0 * pi / nphi;
        }
        const double norm = std::sqrt((2.0 * l + 1) * (2.0 * lp + 1)) / (4.0 * pi);
        CHECK(std::abs(norm * re - ((m == mp && l == lp) ? 1.0 : 0.0)) < 1e-10);
      }
    }
  }
}

TEST_CASE("legendre row and polynomial agree with single evaluations") {
  std::vector<double> row(31);
  legendre_assoc_normalized_row(30, -0.42, row);
  for (int m = 0; m <= 30; ++m) CHECK(row[m] == legendre_assoc_normalized(30, m, -0.42));
  CHECK(legendre_p(2, 0.4) == doctest::Approx(0.5 * (3 * 0.16 - 1)));
  CHECK(legendre_p(64, 1.0) == doctest::Approx(1.0));
  CHECK(legendre_p(63, -1.0) == doctest::Approx(-1.0));
}

TEST_CASE("gauss-legendre and adaptive integration") {
  const auto rule = gauss_legendre(10);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], 18);
  CHECK(s == doctest::Approx(2.0 / 19.0).epsilon(1e-14));
  CHECK(integrate([](double x) { return std::cos(40 * x); }, 0.0, 3.0) ==
        doctest::Approx(std::sin(120.0) / 40.0).epsilon(1e-9));
  CHECK(unit_ball_volume(2) == doctest::Approx(pi));
  CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * pi / 3.0));
}
