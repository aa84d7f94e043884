#include <cmath>
#include <cstdio>

#include "nodalmc/error.hpp"
#include "nodalmc/mc.hpp"

namespace nodalmc {

double stable_sum(std::span<const double> xs) {
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

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

MCSummary summarize(std::span<const double> values, std::string fingerprint) {
  if (values.size() < 2) throw ValidationError("summary needs at least 2 replicates");
  MCSummary s;
  s.replicates = values.size();
  const double m = static_cast<double>(values.size());
  s.mean = stable_sum(values) / m;
  std::vector<double> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = values[i] - s.mean;
    sq[i] = d * d;
  }
  s.variance = stable_sum(sq) / (m - 1.0);
  s.std_error = std::sqrt(s.variance / m);
  s.ci95 = {s.mean - 1.96 * s.std_error, s.mean + 1.96 * s.std_error};
  s.fingerprint = std::move(fingerprint);
  return s;
}

double least_squares_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("slope needs >= 2 paired points");
  const double n = static_cast<double>(x.size());
  const double mx = stable_sum(x) / n;
  const double my = stable_sum(y) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw DomainError("slope: x values are all equal");
  return sxy / sxx;
}

}  // namespace nodalmc
