#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "doctest.h"
#include "nodalmc/error.hpp"
#include "nodalmc/spectra.hpp"

using namespace nodalmc;

namespace {

// Brute-force scan over the bounding square.
std::set<std::pair<int, int>> scan_circle(long n) {
  std::set<std::pair<int, int>> out;
  const int b = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n)))) + 1;
  for (int x = -b; x <= b; ++x) {
    for (int y = -b; y <= b; ++y) {
      if (static_cast<long>(x) * x + static_cast<long>(y) * y == n) out.insert({x, y});
    }
  }
  return out;
}

std::set<std::pair<int, int>> as_set(const FrequencySet& fs) {
  std::set<std::pair<int, int>> out;
  for (const auto& k : fs.points) out.insert({k[0], k[1]});
  return out;
}

long r2_divisor_formula(long n) {
  long d1 = 0, d3 = 0;
  for (long d = 1; d <= n; ++d) {
    if (n % d) continue;
    if (d % 4 == 1) ++d1;
    if (d % 4 == 3) ++d3;
  }
  return 4 * (d1 - d3);
}

void check_antipodal(const FrequencySet& fs) {
  std::set<LatticeVector> pts(fs.points.begin(), fs.points.end());
  for (const auto& k : fs.points) CHECK(pts.count({-k[0], -k[1], -k[2]}) == 1);
}

}  // namespace

TEST_CASE("circle points against the brute-force scan") {
  const auto five = circle_points(5);
  CHECK(five.count == 8);
  CHECK(as_set(five) == std::set<std::pair<int, int>>{{1, 2}, {1, -2}, {-1, 2}, {-1, -2}, {2, 1}, {2, -1}, {-2, 1}, {-2, -1}});
  CHECK(circle_points(3).count == 0);
  CHECK(circle_points(3).points.empty());
  const auto tf = circle_points(25);
  CHECK(tf.count == 12);
  for (auto p : {std::pair{5, 0}, {0, -5}, {3, 4}, {-4, 3}}) CHECK(as_set(tf).count(p) == 1);
  for (long n = 1; n <= 200; ++n) CHECK(as_set(circle_points(n)) == scan_circle(n));
}

TEST_CASE("r2 by scan equals the divisor formula for n <= 500") {
  for (long n = 1; n <= 500; ++n) {
    const auto fs = circle_points(n);
    CHECK(static_cast<long>(fs.count) == r2_divisor_formula(n));
    CHECK(fs.count % 4 == 0);
    for (const auto& k : fs.points) CHECK(static_cast<long>(k[0]) * k[0] + static_cast<long>(k[1]) * k[1] == n);
    check_antipodal(fs);
    CHECK(std::is_sorted(fs.points.begin(), fs.points.end()));
  }
}

TEST_CASE("annulus points") {
  const auto disc = annulus_points(2, 5, 5);
  CHECK(disc.count == 80);
  CHECK(mode_count_normalizer(disc) == 80);
  const auto line = annulus_points(1, 3.5, 1);
  CHECK(line.count == 2);
  CHECK(line.points[0][0] == -3);
  CHECK(line.points[1][0] == 3);
  const double T = 30.0;
  const double rho = T / std::log(T);
  const auto win = annulus_points(2, T, rho);
  const double area = std::numbers::pi * (T * T - (T - rho) * (T - rho));
  CHECK(std::abs(win.count - area) < 0.2 * area);
  for (const auto& k : win.points) {
    const double r = std::hypot(k[0], k[1]);
    CHECK(r <= T);
    CHECK(r > T - rho);
  }
  check_antipodal(win);
  check_antipodal(annulus_points(3, 4.0, 1.5));
  // Integer T is included: |k| <= T.
  CHECK(annulus_points(1, 3.0, 0.5).count == 2);
}

TEST_CASE("empty windows are flagged") {
  const auto fs = annulus_points(2, 1.3, 0.2);
  CHECK(fs.flagged_empty);
  CHECK(fs.count == 0);
  CHECK_THROWS_AS(mode_count_normalizer(fs), ValidationError);
  CHECK_THROWS_AS(mode_count_normalizer(circle_points(3)), ValidationError);
  CHECK_THROWS_AS(annulus_points(2, 5, 6), DomainError);
  CHECK_THROWS_AS(annulus_points(4, 5, 1), DomainError);
}

TEST_CASE("mode count normalizers") {
  CHECK(mode_count_normalizer(circle_points(5)) == 8);
  for (int l : {1, 7, 20}) CHECK(mode_count_normalizer(sphere_degree(l)) == 2 * l + 1);
  CHECK(frequency_scale(circle_points(5)) == doctest::Approx(std::sqrt(5.0)));
  CHECK(frequency_scale(sphere_degree(9)) == 9);
  CHECK(asymptotic_mode_count(annulus_points(2, 5, 5)) == doctest::Approx(25 * std::numbers::pi));
}

TEST_CASE("half lattice picks one representative per antipodal pair") {
  for (const auto& fs : {circle_points(25), circle_points(1105), annulus_points(2, 7, 3), annulus_points(1, 9, 4)}) {
    const auto half = half_lattice(fs);
    CHECK(half.size() * 2 == fs.count);
    std::set<LatticeVector> chosen;
    for (auto i : half) {
      const auto& k = fs.points[i];
      CHECK((k[0] > 0 || (k[0] == 0 && (k[1] > 0 || (k[1] == 0 && k[2] > 0)))));
      chosen.insert(k);
      CHECK(chosen.count({-k[0], -k[1], -k[2]}) == 0);
    }
  }
}
