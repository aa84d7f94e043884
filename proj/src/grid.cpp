#include "nodalmc/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nodalmc/error.hpp"

namespace nodalmc {

GridGeometry GridGeometry::torus2(int n) {
  if (n < 8) throw DomainError("torus2 grid needs N >= 8");
  GridGeometry g;
  g.kind_ = GridKind::torus2;
  g.rows_ = g.cols_ = n;
  g.du_ = g.dv_ = 1.0 / n;
  g.side_ = 1.0;
  return g;
}

GridGeometry GridGeometry::sphere(int n_theta, int n_phi) {
  if (n_theta < 8 || n_phi < 8) throw DomainError("sphere grid needs Ntheta, Nphi >= 8");
  GridGeometry g;
  g.kind_ = GridKind::sphere;
  g.rows_ = n_theta;
  g.cols_ = n_phi;
  g.dv_ = std::numbers::pi / n_theta;
  g.v0_ = 0.5 * g.dv_;
  g.du_ = 2.0 * std::numbers::pi / n_phi;
  g.side_ = std::numbers::pi;
  return g;
}

GridGeometry GridGeometry::plane_chart(int n, double side) {
  if (n < 8) throw DomainError("plane_chart grid needs N >= 8");
  if (!(side > 0.0) || !std::isfinite(side)) throw DomainError("plane_chart side must be > 0");
  GridGeometry g;
  g.kind_ = GridKind::plane_chart;
  g.rows_ = g.cols_ = n + 1;
  g.du_ = g.dv_ = side / n;
  g.u0_ = g.v0_ = -0.5 * side;
  g.side_ = side;
  return g;
}

double GridGeometry::max_step() const { return std::max(du_, dv_); }

std::string GridGeometry::describe() const {
  switch (kind_) {
    case GridKind::torus2:
      return "torus2(N=" + std::to_string(rows_) + ")";
    case GridKind::sphere:
      return "sphere(Ntheta=" + std::to_string(rows_) + ",Nphi=" + std::to_string(cols_) + ")";
    case GridKind::plane_chart:
      return "plane_chart(N=" + std::to_string(rows_ - 1) + ",L=" + std::to_string(side_) + ")";
  }
  return "unknown";
}

}  // namespace nodalmc
