#include <cmath>
#include <numbers>

#include "nodalmc/error.hpp"
#include "nodalmc/specfun.hpp"

namespace nodalmc::specfun {
namespace {

double apply_rule(const QuadratureRule& rule, const std::function<double(double)>& f, double a,
                  double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return half * sum;
}

double refine(const QuadratureRule& rule, const std::function<double(double)>& f, double a,
              double b, double whole, double tol, int depth) {
  const double mid = 0.5 * (a + b);
  const double left = apply_rule(rule, f, a, mid);
  const double right = apply_rule(rule, f, mid, b);
  if (std::abs(left + right - whole) <= tol || depth >= 40) return left + right;
  return refine(rule, f, a, mid, left, 0.5 * tol, depth + 1) +
         refine(rule, f, mid, b, right, 0.5 * tol, depth + 1);
}

}  // namespace

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: n must be >= 1");
  QuadratureRule rule;
  if (n == 1) {
    rule.nodes = {0.0};
    rule.weights = {2.0};
    return rule;
  }
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol) {
  static const QuadratureRule rule = gauss_legendre(10);
  if (a == b) return 0.0;
  const double whole = apply_rule(rule, f, a, b);
  return refine(rule, f, a, b, whole, abs_tol, 0);
}

}  // namespace nodalmc::specfun
