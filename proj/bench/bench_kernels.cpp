// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <numbers>
#include <random>
#include <vector>

#include "nodalmc/kernels.hpp"
#include "nodalmc/mc.hpp"
#include "nodalmc/spectra.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace nodalmc;

namespace {

std::vector<double> axis(int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = static_cast<double>(i) / n;
  return v;
}

std::vector<kernels::TrigMode> arw_modes(long n) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> z;
  std::vector<kernels::TrigMode> modes;
  for (const auto& k : circle_points(n).points) {
    if (k[0] > 0 || (k[0] == 0 && k[1] > 0)) {
      const std::complex<double> c{z(rng), z(rng)};
      modes.push_back({k[0], k[1], c});
      modes.push_back({-k[0], -k[1], std::conj(c)});
    }
  }
  return modes;
}

void BM_trig_direct(benchmark::State& st) {
  const auto modes = arw_modes(1105);
  const auto xs = axis(st.range(0));
  std::vector<double> out(xs.size() * xs.size());
  for (auto _ : st) benchmark::DoNotOptimize(kernels::trig_sum_direct(modes, 1.0, xs, xs, out));
}

void BM_trig_separable(benchmark::State& st) {
  const auto modes = arw_modes(1105);
  const auto xs = axis(st.range(0));
  std::vector<double> out(xs.size() * xs.size());
  for (auto _ : st) benchmark::DoNotOptimize(kernels::trig_sum_separable(modes, 1.0, xs, xs, out));
}

std::vector<kernels::PlaneWave> waves(int J) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 2 * std::numbers::pi);
  std::vector<kernels::PlaneWave> w(J);
  for (auto& p : w) {
    const double a = u(rng);
    p = {std::cos(a), std::sin(a), 0.1, u(rng)};
  }
  return w;
}

void BM_plane_wave_direct(benchmark::State& st) {
  const auto w = waves(256);
  const auto xs = axis(st.range(0));
  std::vector<double> out(xs.size() * xs.size());
  for (auto _ : st) {
    kernels::plane_wave_sum_direct(w, xs, xs, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_plane_wave(benchmark::State& st) {
  const auto w = waves(256);
  const auto xs = axis(st.range(0));
  std::vector<double> out(xs.size() * xs.size());
  for (auto _ : st) {
    kernels::plane_wave_sum(w, xs, xs, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Fast>
void BM_legendre(benchmark::State& st) {
  const int ell = 20;
  const int nt = static_cast<int>(st.range(0));
  std::vector<double> a(ell + 1, 0.3), b(ell + 1, -0.2), thetas(nt);
  for (int i = 0; i < nt; ++i) thetas[i] = (i + 0.5) * std::numbers::pi / nt;
  std::vector<double> out(static_cast<std::size_t>(nt) * 2 * nt);
  for (auto _ : st) {
    if constexpr (Fast) {
      kernels::legendre_fourier_sum(ell, a, b, thetas, 2 * nt, out);
    } else {
      kernels::legendre_fourier_direct(ell, a, b, thetas, 2 * nt, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
}

FieldSample arw_sample(int N) {
  EnsembleSpec e;
  e.kind = EnsembleKind::arw;
  e.n = 1105;
  return Ensemble(e).sample(CoefficientLaw::gaussian(), GridGeometry::torus2(N), {1, 0});
}

void BM_nodal_serial(benchmark::State& st) {
  const auto s = arw_sample(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(nodal_length_serial(s));
}

void BM_nodal_parallel(benchmark::State& st) {
  const auto s = arw_sample(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(nodal_length(s).length);
}

void BM_expectation(benchmark::State& st) {
#ifdef _OPENMP
  const int restore = omp_get_max_threads();
  omp_set_num_threads(static_cast<int>(st.range(0)));
#endif
  ExperimentSpec spec;
  spec.ensemble.kind = EnsembleKind::arw;
  spec.ensemble.n = 65;
  spec.grid = 128;
  spec.replicates = 32;
  for (auto _ : st) benchmark::DoNotOptimize(mc_expectation(spec).raw.mean);
#ifdef _OPENMP
  omp_set_num_threads(restore);
#endif
}

}  // namespace

BENCHMARK(BM_trig_direct)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_trig_separable)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_plane_wave_direct)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_plane_wave)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_legendre<false>)->Name("BM_legendre_direct")->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_legendre<true>)->Name("BM_legendre_fast")->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_nodal_serial)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_nodal_parallel)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_expectation)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
