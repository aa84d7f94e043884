#include <cmath>
#include <numbers>

#include "nodalmc/error.hpp"
#include "nodalmc/mc.hpp"
#include "nodalmc/parallel.hpp"

namespace nodalmc {

LocalityResult locality_check(const FieldSample& sample, double lambda, int centers_per_side) {
  if (sample.geometry.kind() != GridKind::torus2) throw ValidationError("locality check needs a torus grid");
  if (centers_per_side * centers_per_side < 100) throw ValidationError("locality check needs >= 100 centers");
  if (!(lambda >= 1.0)) throw ValidationError("locality check needs lambda >= 1 (ball radius <= 1/2)");
  LocalityResult out;
  out.global_length = nodal_length(sample).length;
  const auto segments = extract_segments(sample);
  const double radius = 1.0 / (2.0 * lambda);
  std::vector<double> local;
  local.reserve(static_cast<std::size_t>(centers_per_side) * centers_per_side);
  for (int a = 0; a < centers_per_side; ++a) {
    for (int b = 0; b < centers_per_side; ++b) {
      const Point2 c{static_cast<double>(b) / centers_per_side, static_cast<double>(a) / centers_per_side};
      local.push_back(lambda * restricted_length(segments, sample.geometry, c, radius));
    }
  }
  const double mean_local = stable_sum(local) / static_cast<double>(local.size());
  // 2^n / omega_n with n = 2.
  out.reconstructed = (4.0 / std::numbers::pi) * lambda * mean_local;
  if (out.global_length == 0.0) {
    out.relative_discrepancy = out.reconstructed == 0.0 ? 0.0 : 1.0;
  } else {
    out.relative_discrepancy = std::abs(out.reconstructed - out.global_length) / out.global_length;
  }
  return out;
}

LocalityBatch locality_batch(const Ensemble& ensemble, const CoefficientLaw& law,
                             std::uint64_t seed, std::size_t count, int grid,
                             int centers_per_side) {
  if (!ensemble.planar() || ensemble.spec().kind == EnsembleKind::rwm) {
    throw ValidationError("locality check needs a torus ensemble");
  }
  if (count == 0) throw ValidationError("locality batch is empty");
  LocalityBatch out;
  out.samples.resize(count);
  std::vector<std::string> errors(count);
  const GridGeometry geometry = ensemble.natural_geometry(grid);
  const double lambda = ensemble.frequency_scale();
  const long n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic, 1) if (parallel::outermost())
  for (long r = 0; r < n; ++r) {
    try {
      const auto s = ensemble.sample(law, geometry, {seed, static_cast<std::uint64_t>(r)});
      out.samples[r] = locality_check(s, lambda, centers_per_side);
    } catch (const std::exception& e) {
      errors[r] = e.what();
    }
  }
  for (std::size_t r = 0; r < count; ++r) {
    if (!errors[r].empty()) throw ValidationError("replicate " + std::to_string(r) + ": " + errors[r]);
  }
  std::vector<double> d(count);
  for (std::size_t r = 0; r < count; ++r) d[r] = out.samples[r].relative_discrepancy;
  out.mean_relative_discrepancy = stable_sum(d) / static_cast<double>(count);
  return out;
}

}  // namespace nodalmc
