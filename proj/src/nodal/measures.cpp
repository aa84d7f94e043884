#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>

#include "nodalmc/error.hpp"
#include "nodalmc/nodal.hpp"
#include "nodalmc/parallel.hpp"

namespace nodalmc {
namespace {

constexpr double kSlack = 1e-12;

double wrap_half(double d) { return d - std::round(d); }

struct Vec3 {
  double x, y, z;
};

Vec3 on_sphere(double phi, double theta) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

// Fraction of the segment a + s (b - a), s in [0,1], with |.| <= r.
double inside_fraction_flat(double ax, double ay, double bx, double by, double r) {
  const double dx = bx - ax;
  const double dy = by - ay;
  const double A = dx * dx + dy * dy;
  const double B = 2.0 * (ax * dx + ay * dy);
  const double C = ax * ax + ay * ay - r * r;
  if (A == 0.0) return C <= 0.0 ? 1.0 : 0.0;
  const double disc = B * B - 4.0 * A * C;
  if (disc <= 0.0) return 0.0;
  const double root = std::sqrt(disc);
  const double s1 = (-B - root) / (2.0 * A);
  const double s2 = (-B + root) / (2.0 * A);
  return std::max(0.0, std::min(1.0, s2) - std::max(0.0, s1));
}

// Fraction of the chord p0 + s (p1 - p0) with <p, c> >= cos r.
double inside_fraction_cap(const Vec3& p0, const Vec3& p1, const Vec3& c, double cos_r) {
  const double h0 = dot(p0, c) - cos_r;
  const double h1 = dot(p1, c) - cos_r;
  if (h0 >= 0.0 && h1 >= 0.0) return 1.0;
  if (h0 < 0.0 && h1 < 0.0) return 0.0;
  const double t = h0 / (h0 - h1);
  return h0 >= 0.0 ? t : 1.0 - t;
}

// Distance between grid coordinates under the geometry (geodesic on the sphere).
double distance(const GridGeometry& g, Point2 a, Point2 b) {
  switch (g.kind()) {
    case GridKind::torus2:
      return std::hypot(wrap_half(a.u - b.u), wrap_half(a.v - b.v));
    case GridKind::sphere: {
      const double d = dot(on_sphere(a.u, a.v), on_sphere(b.u, b.v));
      return std::acos(std::clamp(d, -1.0, 1.0));
    }
    case GridKind::plane_chart:
      break;
  }
  return std::hypot(a.u - b.u, a.v - b.v);
}

void check_ball(const GridGeometry& g, Point2 c, double r, const char* what) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError(std::string(what) + ": radius must be >= 0");
  bool inside = true;
  switch (g.kind()) {
    case GridKind::torus2:
      inside = r <= 0.5 + kSlack;
      break;
    case GridKind::sphere:
      inside = r <= std::numbers::pi + kSlack;
      break;
    case GridKind::plane_chart: {
      const double half = 0.5 * g.side() + kSlack;
      inside = std::abs(c.u) + r <= half && std::abs(c.v) + r <= half;
      break;
    }
  }
  if (!inside) {
    throw ValidationError(std::string(what) + ": ball of radius " + std::to_string(r) +
                          " does not fit in " + g.describe());
  }
}

}  // namespace

double restricted_length(std::span<const Segment> segments, const GridGeometry& g, Point2 c,
                         double r) {
  if (r <= 0.0) return 0.0;
  double sum = 0.0;
  if (g.kind() == GridKind::sphere) {
    const Vec3 cv = on_sphere(c.u, c.v);
    const double cos_r = std::cos(r);
    for (const auto& s : segments) {
      const double frac =
          inside_fraction_cap(on_sphere(s.u0, s.v0), on_sphere(s.u1, s.v1), cv, cos_r);
      sum += frac * s.length;
    }
    return sum;
  }
  const bool periodic = g.kind() == GridKind::torus2;
  for (const auto& s : segments) {
    double ax = s.u0 - c.u;
    double ay = s.v0 - c.v;
    if (periodic) {
      ax = wrap_half(ax);
      ay = wrap_half(ay);
    }
    const double bx = ax + (s.u1 - s.u0);
    const double by = ay + (s.v1 - s.v0);
    sum += inside_fraction_flat(ax, ay, bx, by, r) * s.length;
  }
  return sum;
}

NodalEstimate restricted_nodal_length(const FieldSample& sample, Point2 center, double radius) {
  check_ball(sample.geometry, center, radius, "restricted_nodal_length");
  NodalEstimate est;
  est.grid_step = sample.geometry.max_step();
  if (radius == 0.0) {
    check_resolution(sample);
    return est;
  }
  const auto segments = extract_segments(sample);
  est.length = restricted_length(segments, sample.geometry, center, radius);
  return est;
}

double richardson(double fine, double coarse) { return (4.0 * fine - coarse) / 3.0; }

NodalEstimate with_refinement(NodalEstimate fine, double coarse, double coarser) {
  fine.refinement = std::make_pair(coarse, coarser);
  const double d1 = std::abs(coarser - coarse);
  const double d2 = std::abs(coarse - fine.length);
  if (d1 < d2) {
    std::clog << "nodal: refinement not contracting (|L(4h)-L(2h)| = " << d1
              << ", |L(2h)-L(h)| = " << d2 << ")\n";
  }
  return fine;
}

DoublingIndex doubling_index(const FieldSample& sample, Point2 center, double r) {
  const GridGeometry& g = sample.geometry;
  if (!(r > 0.0)) throw DomainError("doubling_index: radius must be positive");
  check_ball(g, center, 2.0 * r, "doubling_index");
  if (sample.values.size() != g.size()) throw ValidationError("doubling_index: value count mismatch");
  DoublingIndex out;
  double sup_inner = 0.0;
  double sup_outer = 0.0;
  const double r1 = r * (1.0 + kSlack);
  const double r2 = 2.0 * r * (1.0 + kSlack);
  for (int i = 0; i < g.rows(); ++i) {
    for (int j = 0; j < g.cols(); ++j) {
      const double d = distance(g, {g.u(j), g.v(i)}, center);
      if (d > r2) continue;
      const double a = std::abs(sample.values[g.index(i, j)]);
      ++out.outer_nodes;
      sup_outer = std::max(sup_outer, a);
      if (d <= r1) {
        ++out.inner_nodes;
        sup_inner = std::max(sup_inner, a);
      }
    }
  }
  if (out.inner_nodes < 16) {
    throw ValidationError("doubling_index: only " + std::to_string(out.inner_nodes) +
                          " grid nodes inside B (need 16)");
  }
  if (sup_inner == 0.0) throw ValidationError("field vanishes on grid");
  out.low_resolution = out.inner_nodes < 100;
  out.value = std::log(sup_outer / sup_inner);
  return out;
}

std::vector<Proportion> small_ball_probabilities(const Ensemble& ensemble,
                                                 const CoefficientLaw& law, std::uint64_t seed,
                                                 Point2 point, std::span<const double> taus,
                                                 std::size_t m) {
  if (m < 1000) throw ValidationError("small_ball_probability: need m >= 1000 replicates");
  for (double t : taus) {
    if (!(t > 0.0)) throw DomainError("small_ball_probability: tau must be positive");
  }
  std::vector<double> values(m);
  const long count = static_cast<long>(m);
#pragma omp parallel for schedule(dynamic, 16) if (parallel::outermost())
  for (long r = 0; r < count; ++r) {
    const auto field = ensemble.draw(law, {seed, static_cast<std::uint64_t>(r)});
    values[r] = std::abs(field->value(point.u, point.v));
  }
  std::vector<Proportion> out;
  for (double t : taus) {
    Proportion p;
    p.replicates = m;
    p.hits = static_cast<std::size_t>(
        std::count_if(values.begin(), values.end(), [t](double v) { return v <= t; }));
    p.estimate = static_cast<double>(p.hits) / static_cast<double>(m);
    p.std_error = std::sqrt(p.estimate * (1.0 - p.estimate) / static_cast<double>(m));
    out.push_back(p);
  }
  return out;
}

Proportion small_ball_probability(const Ensemble& ensemble, const CoefficientLaw& law,
                                  std::uint64_t seed, Point2 point, double tau, std::size_t m) {
  const double taus[1] = {tau};
  return small_ball_probabilities(ensemble, law, seed, point, taus, m)[0];
}

}  // namespace nodalmc
