#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "nodalmc/error.hpp"
#include "nodalmc/mc.hpp"

namespace nodalmc {
namespace {

constexpr double kTieSlack = 1e-12;

}  // namespace

double ks_statistic(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw DomainError("ks_statistic: empty sample");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double na = static_cast<double>(x.size());
  const double nb = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return d;
}

double ks_permutation_pvalue(std::span<const double> a, std::span<const double> b,
                             std::size_t permutations, std::uint64_t seed) {
  if (permutations == 0) throw DomainError("need at least one permutation");
  const double observed = ks_statistic(a, b);
  const std::size_t na = a.size();
  const std::size_t n = na + b.size();

  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t p, std::size_t q) { return pooled[p] < pooled[q]; });
  // Ends of runs of equal values in sorted order.
  std::vector<std::size_t> run_end;
  for (std::size_t k = 1; k <= n; ++k) {
    if (k == n || pooled[order[k]] != pooled[order[k - 1]]) run_end.push_back(k);
  }

  std::vector<char> label(n, 0);  // label per sorted position: 1 = group a
  std::fill(label.begin(), label.begin() + static_cast<long>(na), 1);
  std::mt19937_64 rng(SeedStream{seed, 0x9e3779b97f4a7c15ULL}.derived_seed());
  const double fa = static_cast<double>(na);
  const double fb = static_cast<double>(n - na);
  std::size_t exceed = 0;
  for (std::size_t p = 0; p < permutations; ++p) {
    std::shuffle(label.begin(), label.end(), rng);
    std::size_t ca = 0;
    std::size_t pos = 0;
    double d = 0.0;
    for (std::size_t end : run_end) {
      for (; pos < end; ++pos) ca += static_cast<std::size_t>(label[pos]);
      d = std::max(d, std::abs(ca / fa - (end - ca) / fb));
    }
    if (d >= observed - kTieSlack) ++exceed;
  }
  return (1.0 + static_cast<double>(exceed)) / (1.0 + static_cast<double>(permutations));
}

CompareResult distribution_compare(const ExperimentSpec& a, const ExperimentSpec& b,
                                   std::size_t permutations) {
  const auto& ma = a.measurement;
  const auto& mb = b.measurement;
  if (ma.kind != mb.kind || ma.radius != mb.radius || ma.tau != mb.tau) {
    throw ValidationError("distribution_compare: measurements differ");
  }
  if (a.grid != b.grid || a.chart_side != b.chart_side) {
    throw ValidationError("distribution_compare: geometries differ");
  }
  if (a.replicates < 500 || b.replicates < 500) {
    throw ValidationError("distribution_compare: need m >= 500 per side");
  }
  if (permutations < 1000) throw ValidationError("distribution_compare: need >= 1000 permutations");
  CompareResult out;
  auto ra = mc_expectation(a);
  auto rb = mc_expectation(b);
  out.a = ra.raw;
  out.b = rb.raw;
  out.values_a = std::move(ra.values);
  out.values_b = std::move(rb.values);
  out.ks = ks_statistic(out.values_a, out.values_b);
  out.permutations = permutations;
  out.p_value = ks_permutation_pvalue(out.values_a, out.values_b, permutations,
                                      mix64(a.seed) ^ mix64(b.seed + 1));
  return out;
}

}  // namespace nodalmc
