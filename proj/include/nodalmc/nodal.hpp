#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "nodalmc/ensembles.hpp"

namespace nodalmc {

/// Straight piece of the discrete nodal set, in grid coordinates.
struct Segment {
  double u0, v0, u1, v1;
  double length;  // in manifold units
};

struct Point2 {
  double u = 0.0;
  double v = 0.0;
};

struct NodalEstimate {
  double length = 0.0;
  double grid_step = 0.0;
  /// Lengths on the grids with step 2h and 4h, when a refinement was run.
  std::optional<std::pair<double, double>> refinement;
  /// Upper bound for nodal length in regions the grid does not cover (sphere caps).
  double excluded_region_bound = 0.0;
};

/// Bound on the nodal length hidden in the two polar caps of a sphere grid:
/// unit-frequency density * (kappa / 2 pi) * cap area, times 2 caps and safety 2.
/// Zero for flat grids.
double polar_cap_bound(const GridGeometry& geometry, double wavenumber);

/// Throws ValidationError when the grid has fewer than 4 points per wavelength.
void check_resolution(const FieldSample& sample);

/// Marching squares. Corners with value exactly 0 count as positive; the two
/// saddle cases are resolved by the sign at the cell centre, evaluated
/// exactly when the sample carries its field function and bilinearly
/// otherwise. Periodic directions wrap. OpenMP-parallel over cell rows with a
/// fixed-order reduction, so the result does not depend on the thread count.
NodalEstimate nodal_length(const FieldSample& sample);

/// Serial reference: extract every segment, then sum in row order.
double nodal_length_serial(const FieldSample& sample);

/// All contour segments in row-major cell order (serial).
std::vector<Segment> extract_segments(const FieldSample& sample);

/// Length of a coordinate segment under the grid metric
/// (sphere: ds^2 = dtheta^2 + sin^2(theta_mid) dphi^2).
double segment_length(const GridGeometry& geometry, double u0, double v0, double u1, double v1);

/// Nodal length inside the (geodesic) ball B(center, radius); each segment is
/// clipped against the ball by its linear parameterization.
double restricted_length(std::span<const Segment> segments, const GridGeometry& geometry,
                         Point2 center, double radius);
NodalEstimate restricted_nodal_length(const FieldSample& sample, Point2 center, double radius);

/// (4 L(h) - L(2h)) / 3 for an O(h^2) estimator.
double richardson(double fine, double coarse);

/// Attaches the coarser lengths; logs whether successive differences shrink.
NodalEstimate with_refinement(NodalEstimate fine, double coarse, double coarser);

struct DoublingIndex {
  double value = 0.0;
  bool low_resolution = false;  // fewer than 100 grid nodes inside B
  std::size_t inner_nodes = 0;
  std::size_t outer_nodes = 0;
};

/// log(max_{2B} |f| / max_B |f|) over grid nodes. Needs 2B inside the chart and
/// at least 16 nodes in B; throws ValidationError when f vanishes on B's nodes.
DoublingIndex doubling_index(const FieldSample& sample, Point2 center, double radius);

struct Proportion {
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t hits = 0;
  std::size_t replicates = 0;
};

/// Fraction of m >= 1000 independent realizations with |f(point)| <= tau
/// (replicate r uses stream (seed, r)), with binomial standard error.
Proportion small_ball_probability(const Ensemble& ensemble, const CoefficientLaw& law,
                                  std::uint64_t seed, Point2 point, double tau, std::size_t m);

/// Same replicates evaluated against several thresholds.
std::vector<Proportion> small_ball_probabilities(const Ensemble& ensemble,
                                                 const CoefficientLaw& law, std::uint64_t seed,
                                                 Point2 point, std::span<const double> taus,
                                                 std::size_t m);

/// CSV with header x1,y1,x2,y2,length.
void write_segments_csv(std::ostream& os, std::span<const Segment> segments);

}  // namespace nodalmc
