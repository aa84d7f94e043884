#include <cmath>

#include "nodalmc/ensembles.hpp"
#include "nodalmc/error.hpp"

namespace nodalmc {
namespace {

constexpr std::size_t kMinSamples = 100;

void check_pairs(std::span<const FieldSample> samples, std::span<const NodePair> pairs) {
  if (samples.size() < kMinSamples) {
    throw ValidationError("empirical covariance needs at least 100 samples, got " +
                          std::to_string(samples.size()));
  }
  for (const auto& s : samples) {
    const auto& g = s.geometry;
    for (const auto& p : pairs) {
      if (p.i0 < 0 || p.i1 < 0 || p.j0 < 0 || p.j1 < 0 || p.i0 >= g.rows() ||
          p.i1 >= g.rows() || p.j0 >= g.cols() || p.j1 >= g.cols()) {
        throw DomainError("covariance pair outside the grid");
      }
    }
  }
}

CovarianceEstimate summarize(const std::vector<double>& x) {
  const double m = static_cast<double>(x.size());
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= m;
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  const double var = ss / (m - 1.0);
  return {mean, std::sqrt(var / m), x.size()};
}

}  // namespace

std::vector<CovarianceEstimate> empirical_covariance(std::span<const FieldSample> samples,
                                                     std::span<const NodePair> pairs) {
  check_pairs(samples, pairs);
  std::vector<CovarianceEstimate> out;
  out.reserve(pairs.size());
  std::vector<double> products(samples.size());
  for (const auto& p : pairs) {
    for (std::size_t s = 0; s < samples.size(); ++s) {
      products[s] = samples[s].at(p.i0, p.j0) * samples[s].at(p.i1, p.j1);
    }
    out.push_back(summarize(products));
  }
  return out;
}

CovarianceEstimate pooled_covariance(std::span<const FieldSample> samples,
                                     std::span<const NodePair> pairs) {
  check_pairs(samples, pairs);
  if (pairs.empty()) throw DomainError("pooled_covariance: no pairs");
  std::vector<double> averages(samples.size());
  for (std::size_t s = 0; s < samples.size(); ++s) {
    double sum = 0.0;
    for (const auto& p : pairs) sum += samples[s].at(p.i0, p.j0) * samples[s].at(p.i1, p.j1);
    averages[s] = sum / static_cast<double>(pairs.size());
  }
  return summarize(averages);
}

}  // namespace nodalmc
