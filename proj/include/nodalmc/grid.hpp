#pragma once

#include <cstddef>
#include <string>

namespace nodalmc {

enum class GridKind { torus2, sphere, plane_chart };

/// Structured grid with the metric data needed to turn cell segments into
/// lengths. Values are stored row-major; rows run along the second
/// coordinate (y or theta), columns along the first (x or phi).
///
///  torus2(N):        x_j = j/N, y_i = i/N, periodic in both, period 1.
///  sphere(Nt, Np):   theta_i = (i + 1/2) pi / Nt (poles excluded),
///                    phi_j = 2 pi j / Np, periodic in phi.
///  plane_chart(N,L): x_j = -L/2 + j L/N for j = 0..N (N + 1 nodes per side).
class GridGeometry {
 public:
  static GridGeometry torus2(int n);
  static GridGeometry sphere(int n_theta, int n_phi);
  static GridGeometry plane_chart(int n, double side);

  GridKind kind() const { return kind_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const { return static_cast<std::size_t>(rows_) * cols_; }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * cols_ + j; }

  bool periodic_rows() const { return kind_ == GridKind::torus2; }
  bool periodic_cols() const { return kind_ != GridKind::plane_chart; }
  /// Number of cells along each direction.
  int cell_rows() const { return periodic_rows() ? rows_ : rows_ - 1; }
  int cell_cols() const { return periodic_cols() ? cols_ : cols_ - 1; }

  /// Coordinate at a fractional column / row index (no wrapping applied).
  double u(double j) const { return u0_ + j * du_; }
  double v(double i) const { return v0_ + i * dv_; }
  double du() const { return du_; }
  double dv() const { return dv_; }
  /// Largest physical grid step (on the sphere, the theta step).
  double max_step() const;
  /// Chart side length (plane_chart), 1 for the torus, pi for the sphere.
  double side() const { return side_; }

  std::string describe() const;

 private:
  GridKind kind_ = GridKind::torus2;
  int rows_ = 0;
  int cols_ = 0;
  double u0_ = 0.0, du_ = 0.0;
  double v0_ = 0.0, dv_ = 0.0;
  double side_ = 1.0;
};

}  // namespace nodalmc
