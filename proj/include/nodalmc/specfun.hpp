#pragma once

#include <functional>
#include <span>
#include <vector>

namespace nodalmc::specfun {

/// Bessel function of the first kind J_order(x) for order in {0, 1/2, 1, 3/2, ...}.
///
/// Half-integer orders go through the spherical Bessel closed forms (upward
/// recurrence from sin/cos when x exceeds the order, power series otherwise).
/// Integer orders use the power series for x <= 8, the Hankel asymptotic
/// expansion for x >= max(30, order^2) and Miller's normalized backward
/// recurrence in between. Accurate to ~1e-13 absolute on [0, 1e3].
///
/// Throws DomainError for negative or non-finite x, or an order that is not a
/// non-negative multiple of 1/2.
double bessel_j(double order, double x);

/// Spectral data of an isotropic field on R^n: uniform measure on the shell
/// inner_fraction <= |xi| <= 1 (inner_fraction == 1 is the unit sphere).
struct KernelSpec {
  int dimension = 2;
  double inner_fraction = 1.0;
};

void validate(const KernelSpec& spec);

/// Covariance K(r) = average of e(<w, xi>) over the normalized spectral
/// measure, |w| = r, with e(t) = exp(2 pi i t). K(0) = 1.
double isotropic_kernel(const KernelSpec& spec, double r);

/// Per-coordinate second spectral moment s^2 = -d^2K/dr^2 at 0.
double spectral_second_moment(const KernelSpec& spec);

/// Expected nodal volume per unit volume of the unit-variance Gaussian field
/// with covariance isotropic_kernel(spec, .). For the unit sphere this is
/// sqrt(4 pi / n) Gamma((n+1)/2) / Gamma(n/2); in general
/// s Gamma((n+1)/2) / (sqrt(pi) Gamma(n/2)).
double kac_rice_density(const KernelSpec& spec);

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

/// sqrt((l-m)!/(l+m)!) P_l^m(x), Condon-Shortley phase included, so that
/// the value for -m equals (-1)^m times the value for m.
/// Throws DomainError when |m| > l, l < 0 or |x| > 1.
double legendre_assoc_normalized(int l, int m, double x);

/// All orders m = 0..l of legendre_assoc_normalized(l, m, x) at once.
/// out.size() must be l + 1.
void legendre_assoc_normalized_row(int l, double x, std::span<double> out);

/// Legendre polynomial P_l(x).
double legendre_p(int l, double x);

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(int n);

/// Adaptive Gauss-Legendre integration: an interval is accepted once the
/// 10-point estimate and the sum of its two half-interval estimates agree
/// to the (halved per level) absolute tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-9);

}  // namespace nodalmc::specfun
