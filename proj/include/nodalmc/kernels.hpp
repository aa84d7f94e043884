#pragma once

// Grid synthesis kernels. Each fast kernel is OpenMP-parallel over output
// rows; the *_direct variants are serial node-by-node summations kept as the
// reference implementation for tests and benchmarks.

#include <complex>
#include <span>

namespace nodalmc::kernels {

struct TrigMode {
  int kx = 0;
  int ky = 0;
  std::complex<double> c;
};

/// out[i * xs.size() + j] = scale * Re sum_k c_k e(kx xs[j] + ky ys[i]),
/// e(t) = exp(2 pi i t). Separable: modes are grouped by ky, so the cost is
/// O(modes * cols + rows * cols * distinct_ky). Returns max |scale * Im|.
double trig_sum_separable(std::span<const TrigMode> modes, double scale,
                          std::span<const double> xs, std::span<const double> ys,
                          std::span<double> out);
double trig_sum_direct(std::span<const TrigMode> modes, double scale, std::span<const double> xs,
                       std::span<const double> ys, std::span<double> out);

struct PlaneWave {
  double kx = 0.0;
  double ky = 0.0;
  double amplitude = 0.0;
  double phase = 0.0;
};

/// out = sum_w amplitude_w cos(2 pi (kx x + ky y) + phase_w).
void plane_wave_sum(std::span<const PlaneWave> waves, std::span<const double> xs,
                    std::span<const double> ys, std::span<double> out);
void plane_wave_sum_direct(std::span<const PlaneWave> waves, std::span<const double> xs,
                           std::span<const double> ys, std::span<double> out);

/// out[i * n_phi + j] = sum_m p_l^m(cos theta_i) (a_m cos(m phi_j) + b_m sin(m phi_j))
/// with phi_j = 2 pi j / n_phi and p the normalized associated Legendre factors.
void legendre_fourier_sum(int ell, std::span<const double> cos_coeffs,
                          std::span<const double> sin_coeffs, std::span<const double> thetas,
                          int n_phi, std::span<double> out);
void legendre_fourier_direct(int ell, std::span<const double> cos_coeffs,
                             std::span<const double> sin_coeffs, std::span<const double> thetas,
                             int n_phi, std::span<double> out);

/// exp(2 pi i t) with t reduced to [-1/2, 1/2] first.
std::complex<double> unit_phase(double t);

}  // namespace nodalmc::kernels
