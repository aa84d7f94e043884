#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "nodalmc/coeff_laws.hpp"
#include "nodalmc/error.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace nodalmc;

namespace {

struct Moments {
  double mean, var, kurt;
};

Moments moments(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  double m = 0.0;
  for (double x : xs) m += x;
  m /= n;
  double m2 = 0.0;
  double m4 = 0.0;
  for (double x : xs) {
    const double d = (x - m) * (x - m);
    m2 += d;
    m4 += d * d;
  }
  return {m, m2 / (n - 1.0), (m4 / n) / ((m2 / n) * (m2 / n))};
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(double(i) / a.size() - double(j) / b.size()));
  }
  return d;
}

}  // namespace

TEST_CASE("every law is centred with unit variance") {
  for (const auto& law : {CoefficientLaw::gaussian(), CoefficientLaw::rademacher(), CoefficientLaw::uniform(),
                          CoefficientLaw::two_point(0.5), CoefficientLaw::two_point(0.3)}) {
    const auto xs = draw_real(law, {12345, 1}, 1'000'000);
    const auto mo = moments(xs);
    INFO(law.name());
    CHECK(std::abs(mo.mean) < 5e-3);
    CHECK(std::abs(mo.var - 1.0) < 5e-3);
  }
}

TEST_CASE("two-point law takes its two documented values") {
  const double p = 0.3;
  const auto xs = draw_real(CoefficientLaw::two_point(p), {5, 0}, 10000);
  for (double x : xs) {
    const bool hi = std::abs(x - std::sqrt((1 - p) / p)) < 1e-15;
    const bool lo = std::abs(x + std::sqrt(p / (1 - p))) < 1e-15;
    CHECK((hi || lo));
  }
}

TEST_CASE("rademacher draws are +-1 with balanced frequency") {
  const auto xs = draw_real(CoefficientLaw::rademacher(), {77, 3}, 1'000'000);
  std::size_t plus = 0;
  for (double x : xs) {
    CHECK_UNARY(x == 1.0 || x == -1.0);
    plus += x > 0;
  }
  CHECK(std::abs(plus / 1e6 - 0.5) < 0.002);
}

TEST_CASE("gaussian kurtosis is 3") {
  const auto mo = moments(draw_real(CoefficientLaw::gaussian(), {99, 0}, 100'000));
  CHECK(std::abs(mo.kurt - 3.0) < 0.1);
}

TEST_CASE("gaussian draws pass a KS test against the normal CDF at 1e-3") {
  auto xs = draw_real(CoefficientLaw::gaussian(), {2024, 7}, 100'000);
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double cdf = 0.5 * std::erfc(-xs[i] / std::sqrt(2.0));
    d = std::max({d, std::abs((i + 1) / n - cdf), std::abs(i / n - cdf)});
  }
  // Asymptotic one-sample critical value at alpha = 1e-3.
  CHECK(d < 1.9495 / std::sqrt(n));
}

TEST_CASE("two_point(1/2) is rademacher in law") {
  const auto a = draw_real(CoefficientLaw::two_point(0.5), {1, 0}, 100'000);
  const auto b = draw_real(CoefficientLaw::rademacher(), {2, 0}, 100'000);
  CHECK(ks_two_sample(a, b) < 0.01);
}

TEST_CASE("hermitian draws") {
  SUBCASE("unit second moment") {
    for (const auto& law : {CoefficientLaw::gaussian(), CoefficientLaw::uniform(), CoefficientLaw::rademacher()}) {
      const auto zs = draw_hermitian_pair(law, {8, 8}, 1'000'000);
      double s = 0.0;
      for (auto z : zs) s += std::norm(z);
      CHECK(std::abs(s / zs.size() - 1.0) < 0.005);
    }
  }
  SUBCASE("gaussian parts have variance 1/2") {
    const auto zs = draw_hermitian_pair(CoefficientLaw::gaussian(), {9, 9}, 1'000'000);
    std::vector<double> re, im;
    for (auto z : zs) {
      re.push_back(z.real());
      im.push_back(z.imag());
    }
    CHECK(std::abs(moments(re).var - 0.5) < 0.005);
    CHECK(std::abs(moments(im).var - 0.5) < 0.005);
  }
  SUBCASE("rademacher coefficients have modulus one") {
    for (auto z : draw_hermitian_pair(CoefficientLaw::rademacher(), {3, 1}, 10000)) {
      CHECK(std::abs(z) == doctest::Approx(1.0).epsilon(1e-15));
    }
  }
}

TEST_CASE("streams are reproducible and distinct") {
  const auto a = draw_real(CoefficientLaw::gaussian(), {42, 17}, 1000);
  const auto b = draw_real(CoefficientLaw::gaussian(), {42, 17}, 1000);
  CHECK(a == b);
  const auto c = draw_real(CoefficientLaw::gaussian(), {42, 18}, 1000);
  CHECK(a != c);
  std::set<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < 100000; ++i) seeds.insert(SeedStream{42, i}.derived_seed());
  CHECK(seeds.size() == 100000);
  CHECK(SeedStream{1, 0}.derived_seed() != SeedStream{0, 1}.derived_seed());
}

TEST_CASE("per-replicate sequences do not depend on the worker count") {
  const int reps = 64;
  auto run = [&](int threads) {
    std::vector<std::vector<double>> out(reps);
#ifdef _OPENMP
    omp_set_num_threads(threads);
#else
    (void)threads;
#endif
#pragma omp parallel for schedule(dynamic, 1)
    for (int r = 0; r < reps; ++r) {
      out[r] = draw_real(CoefficientLaw::uniform(), {7, static_cast<std::uint64_t>(r)}, 257);
    }
    return out;
  };
  const auto one = run(1);
  const auto four = run(4);
  CHECK(one == four);
#ifdef _OPENMP
  omp_set_num_threads(omp_get_num_procs());
#endif
}

TEST_CASE("law parsing") {
  CHECK(CoefficientLaw::parse("gaussian") == CoefficientLaw::gaussian());
  CHECK(CoefficientLaw::parse("bernoulli") == CoefficientLaw::rademacher());
  CHECK(CoefficientLaw::parse("two-point:0.25") == CoefficientLaw::two_point(0.25));
  CHECK(CoefficientLaw::parse(CoefficientLaw::two_point(0.125).name()) == CoefficientLaw::two_point(0.125));
  CHECK_THROWS_AS(CoefficientLaw::parse("cauchy"), DomainError);
  CHECK_THROWS_AS(CoefficientLaw::parse("two-point:1.5"), DomainError);
  CHECK_THROWS_AS(CoefficientLaw::parse("two-point:x"), DomainError);
  CHECK(draw_real(CoefficientLaw::gaussian(), {1, 1}, 0).empty());
}
