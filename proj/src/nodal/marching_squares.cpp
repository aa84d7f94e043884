#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>

#include "nodalmc/error.hpp"
#include "nodalmc/nodal.hpp"
#include "nodalmc/parallel.hpp"
#include "nodalmc/specfun.hpp"

namespace nodalmc {
namespace {

// Corner order around a cell: (i,j), (i,j+1), (i+1,j+1), (i+1,j).
// Edge e joins corner e to corner (e+1) % 4.
constexpr int kCornerDj[4] = {0, 1, 1, 0};
constexpr int kCornerDi[4] = {0, 0, 1, 1};

// Visits every segment of cell row i as visit(u0, v0, u1, v1) in grid coordinates.
template <class Visit>
void march_row(const FieldSample& s, int i, Visit&& visit) {
  const GridGeometry& g = s.geometry;
  const int rows = g.rows();
  const int cols = g.cols();
  const int ncols = g.cell_cols();
  const int inext = (i + 1) % rows;
  for (int j = 0; j < ncols; ++j) {
    const int jnext = (j + 1) % cols;
    const double val[4] = {s.values[g.index(i, j)], s.values[g.index(i, jnext)],
                           s.values[g.index(inext, jnext)], s.values[g.index(inext, j)]};
    bool pos[4];
    int mask = 0;
    for (int k = 0; k < 4; ++k) {
      pos[k] = val[k] >= 0.0;
      mask |= (pos[k] ? 1 : 0) << k;
    }
    if (mask == 0 || mask == 15) continue;

    double eu[4], ev[4];
    int crossing[4];
    int crossings = 0;
    for (int e = 0; e < 4; ++e) {
      const int a = e;
      const int b = (e + 1) % 4;
      if (pos[a] == pos[b]) continue;
      const double t = val[a] / (val[a] - val[b]);
      const double ja = j + kCornerDj[a];
      const double ia = i + kCornerDi[a];
      const double jb = j + kCornerDj[b];
      const double ib = i + kCornerDi[b];
      eu[e] = g.u(ja + t * (jb - ja));
      ev[e] = g.v(ia + t * (ib - ia));
      crossing[crossings++] = e;
    }

    if (crossings == 2) {
      const int e0 = crossing[0];
      const int e1 = crossing[1];
      visit(eu[e0], ev[e0], eu[e1], ev[e1]);
      continue;
    }

    // Saddle: the corners whose sign differs from the centre are cut off.
    double centre;
    if (s.function) {
      centre = s.function->value(g.u(j + 0.5), g.v(i + 0.5));
    } else {
      centre = 0.25 * (val[0] + val[1] + val[2] + val[3]);
    }
    const bool centre_pos = centre >= 0.0;
    for (int k = 0; k < 4; ++k) {
      if (pos[k] == centre_pos) continue;
      const int before = (k + 3) % 4;
      visit(eu[before], ev[before], eu[k], ev[k]);
    }
  }
}

double neumaier_sum(std::span<const double> xs) {
  double sum = 0.0;
  double comp = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

}  // namespace

double polar_cap_bound(const GridGeometry& g, double wavenumber) {
  if (g.kind() != GridKind::sphere || wavenumber <= 0.0) return 0.0;
  const double density =
      specfun::kac_rice_density({2, 1.0}) * wavenumber / (2.0 * std::numbers::pi);
  const double cap_area = 2.0 * std::numbers::pi * (1.0 - std::cos(std::numbers::pi / g.rows()));
  return 2.0 * 2.0 * density * cap_area;
}

double segment_length(const GridGeometry& g, double u0, double v0, double u1, double v1) {
  const double du = u1 - u0;
  const double dv = v1 - v0;
  if (g.kind() == GridKind::sphere) {
    const double st = std::sin(0.5 * (v0 + v1));
    return std::sqrt(dv * dv + st * st * du * du);
  }
  return std::hypot(du, dv);
}

void check_resolution(const FieldSample& s) {
  if (s.values.size() != s.geometry.size()) {
    throw ValidationError("field sample has " + std::to_string(s.values.size()) +
                          " values for a grid of " + std::to_string(s.geometry.size()));
  }
  if (s.wavenumber <= 0.0) return;
  const double wavelength = 2.0 * std::numbers::pi / s.wavenumber;
  const double per_wavelength = wavelength / s.geometry.max_step();
  if (per_wavelength < 4.0) {
    throw ValidationError("grid resolves " + std::to_string(per_wavelength) +
                          " points per wavelength; at least 4 are required");
  }
}

NodalEstimate nodal_length(const FieldSample& s) {
  check_resolution(s);
  const GridGeometry& g = s.geometry;
  const int rows = g.cell_rows();
  std::vector<double> row_sums(rows, 0.0);
#pragma omp parallel for schedule(static) if (parallel::outermost())
  for (int i = 0; i < rows; ++i) {
    double sum = 0.0;
    march_row(s, i, [&](double u0, double v0, double u1, double v1) {
      sum += segment_length(g, u0, v0, u1, v1);
    });
    row_sums[i] = sum;
  }
  NodalEstimate est;
  est.length = neumaier_sum(row_sums);
  est.grid_step = g.max_step();
  est.excluded_region_bound = polar_cap_bound(g, s.wavenumber);
  return est;
}

std::vector<Segment> extract_segments(const FieldSample& s) {
  check_resolution(s);
  const GridGeometry& g = s.geometry;
  std::vector<Segment> out;
  for (int i = 0; i < g.cell_rows(); ++i) {
    march_row(s, i, [&](double u0, double v0, double u1, double v1) {
      out.push_back({u0, v0, u1, v1, segment_length(g, u0, v0, u1, v1)});
    });
  }
  return out;
}

double nodal_length_serial(const FieldSample& s) {
  double sum = 0.0;
  for (const auto& seg : extract_segments(s)) sum += seg.length;
  return sum;
}

void write_segments_csv(std::ostream& os, std::span<const Segment> segments) {
  os << "x1,y1,x2,y2,length\n" << std::setprecision(17);
  for (const auto& s : segments) {
    os << s.u0 << ',' << s.v0 << ',' << s.u1 << ',' << s.v1 << ',' << s.length << '\n';
  }
}

}  // namespace nodalmc
