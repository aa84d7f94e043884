#include "nodalmc/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "nodalmc/error.hpp"
#include "nodalmc/parallel.hpp"
#include "nodalmc/specfun.hpp"

namespace nodalmc::kernels {
namespace {

using cplx = std::complex<double>;

void check_output(std::span<const double> xs, std::span<const double> ys, std::span<double> out) {
  if (out.size() != xs.size() * ys.size()) {
    throw DomainError("synthesis: output size does not match the grid");
  }
}

// Table of e(k t) for each distinct k over the coordinate list.
struct PhaseTable {
  std::vector<int> keys;
  std::vector<cplx> values;  // keys.size() x coords.size()
  std::size_t width = 0;

  PhaseTable(std::vector<int> distinct, std::span<const double> coords)
      : keys(std::move(distinct)), values(keys.size() * coords.size()), width(coords.size()) {
    for (std::size_t a = 0; a < keys.size(); ++a) {
      for (std::size_t j = 0; j < coords.size(); ++j) {
        values[a * width + j] = unit_phase(keys[a] * coords[j]);
      }
    }
  }
  std::size_t slot(int k) const {
    return static_cast<std::size_t>(std::lower_bound(keys.begin(), keys.end(), k) - keys.begin());
  }
  const cplx* row(std::size_t a) const { return values.data() + a * width; }
};

}  // namespace

cplx unit_phase(double t) {
  const double reduced = t - std::round(t);
  const double angle = 2.0 * std::numbers::pi * reduced;
  return {std::cos(angle), std::sin(angle)};
}

double trig_sum_separable(std::span<const TrigMode> modes, double scale,
                          std::span<const double> xs, std::span<const double> ys,
                          std::span<double> out) {
  check_output(xs, ys, out);
  const std::size_t cols = xs.size();
  const std::size_t rows = ys.size();

  std::vector<int> kxs;
  std::vector<int> kys;
  for (const auto& m : modes) {
    kxs.push_back(m.kx);
    kys.push_back(m.ky);
  }
  std::sort(kxs.begin(), kxs.end());
  kxs.erase(std::unique(kxs.begin(), kxs.end()), kxs.end());
  std::sort(kys.begin(), kys.end());
  kys.erase(std::unique(kys.begin(), kys.end()), kys.end());

  const PhaseTable col_phase(kxs, xs);
  const PhaseTable row_phase(kys, ys);
  const std::size_t groups = kys.size();

  // Column factors B_g(x_j) = sum_{k : ky = g} c_k e(kx x_j).
  std::vector<std::vector<std::size_t>> members(groups);
  for (std::size_t m = 0; m < modes.size(); ++m) members[row_phase.slot(modes[m].ky)].push_back(m);
  std::vector<cplx> factor(groups * cols, cplx{0.0, 0.0});
  const long n_groups = static_cast<long>(groups);
#pragma omp parallel for schedule(static) if (parallel::outermost())
  for (long g = 0; g < n_groups; ++g) {
    cplx* dst = factor.data() + g * cols;
    for (std::size_t m : members[g]) {
      const cplx c = modes[m].c;
      const cplx* ph = col_phase.row(col_phase.slot(modes[m].kx));
      for (std::size_t j = 0; j < cols; ++j) dst[j] += c * ph[j];
    }
  }

  std::vector<double> residue(rows, 0.0);
  const long n_rows = static_cast<long>(rows);
#pragma omp parallel for schedule(static) if (parallel::outermost())
  for (long i = 0; i < n_rows; ++i) {
    double* dst = out.data() + i * cols;
    std::vector<double> im(cols, 0.0);
    std::fill(dst, dst + cols, 0.0);
    for (std::size_t g = 0; g < groups; ++g) {
      const cplx e = row_phase.row(g)[i];
      const cplx* b = factor.data() + g * cols;
      const double er = e.real();
      const double ei = e.imag();
      for (std::size_t j = 0; j < cols; ++j) {
        dst[j] += er * b[j].real() - ei * b[j].imag();
        im[j] += er * b[j].imag() + ei * b[j].real();
      }
    }
    double worst = 0.0;
    for (std::size_t j = 0; j < cols; ++j) {
      dst[j] *= scale;
      worst = std::max(worst, std::abs(scale * im[j]));
    }
    residue[i] = worst;
  }
  return residue.empty() ? 0.0 : *std::max_element(residue.begin(), residue.end());
}

double trig_sum_direct(std::span<const TrigMode> modes, double scale, std::span<const double> xs,
                       std::span<const double> ys, std::span<double> out) {
  check_output(xs, ys, out);
  double worst = 0.0;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    for (std::size_t j = 0; j < xs.size(); ++j) {
      cplx sum{0.0, 0.0};
      for (const auto& m : modes) sum += m.c * unit_phase(m.kx * xs[j] + m.ky * ys[i]);
      out[i * xs.size() + j] = scale * sum.real();
      worst = std::max(worst, std::abs(scale * sum.imag()));
    }
  }
  return worst;
}

void plane_wave_sum(std::span<const PlaneWave> waves, std::span<const double> xs,
                    std::span<const double> ys, std::span<double> out) {
  check_output(xs, ys, out);
  const std::size_t cols = xs.size();
  const std::size_t rows = ys.size();
  const std::size_t count = waves.size();
  // cos(2 pi (kx x + ky y) + phase) = Re[(amp e^{i phase} e(ky y)) e(kx x)]
  std::vector<cplx> col_factor(count * cols);
  std::vector<cplx> row_factor(count * rows);
  for (std::size_t w = 0; w < count; ++w) {
    for (std::size_t j = 0; j < cols; ++j) col_factor[w * cols + j] = unit_phase(waves[w].kx * xs[j]);
    const cplx lead = std::polar(waves[w].amplitude, waves[w].phase);
    for (std::size_t i = 0; i < rows; ++i) row_factor[w * rows + i] = lead * unit_phase(waves[w].ky * ys[i]);
  }
  const long n_rows = static_cast<long>(rows);
#pragma omp parallel for schedule(static) if (parallel::outermost())
  for (long i = 0; i < n_rows; ++i) {
    double* dst = out.data() + i * cols;
    std::fill(dst, dst + cols, 0.0);
    for (std::size_t w = 0; w < count; ++w) {
      const cplx r = row_factor[w * rows + i];
      const cplx* c = col_factor.data() + w * cols;
      for (std::size_t j = 0; j < cols; ++j) dst[j] += r.real() * c[j].real() - r.imag() * c[j].imag();
    }
  }
}

void plane_wave_sum_direct(std::span<const PlaneWave> waves, std::span<const double> xs,
                           std::span<const double> ys, std::span<double> out) {
  check_output(xs, ys, out);
  for (std::size_t i = 0; i < ys.size(); ++i) {
    for (std::size_t j = 0; j < xs.size(); ++j) {
      double sum = 0.0;
      for (const auto& w : waves) {
        sum += w.amplitude *
               std::cos(2.0 * std::numbers::pi * (w.kx * xs[j] + w.ky * ys[i]) + w.phase);
      }
      out[i * xs.size() + j] = sum;
    }
  }
}

void legendre_fourier_sum(int ell, std::span<const double> cos_coeffs,
                          std::span<const double> sin_coeffs, std::span<const double> thetas,
                          int n_phi, std::span<double> out) {
  const std::size_t orders = static_cast<std::size_t>(ell) + 1;
  if (cos_coeffs.size() != orders || sin_coeffs.size() != orders) {
    throw DomainError("legendre_fourier_sum: need l + 1 cosine and sine coefficients");
  }
  if (out.size() != thetas.size() * static_cast<std::size_t>(n_phi)) {
    throw DomainError("legendre_fourier_sum: output size does not match the grid");
  }
  const std::size_t cols = static_cast<std::size_t>(n_phi);
  // cos(m phi_j), sin(m phi_j) with the angle index reduced mod n_phi.
  std::vector<double> cos_table(orders * cols);
  std::vector<double> sin_table(orders * cols);
  for (std::size_t m = 0; m < orders; ++m) {
    for (std::size_t j = 0; j < cols; ++j) {
      const auto idx = static_cast<double>((m * j) % cols);
      const double angle = 2.0 * std::numbers::pi * idx / static_cast<double>(cols);
      cos_table[m * cols + j] = std::cos(angle);
      sin_table[m * cols + j] = std::sin(angle);
    }
  }
  const long n_rows = static_cast<long>(thetas.size());
#pragma omp parallel for schedule(static) if (parallel::outermost())
  for (long i = 0; i < n_rows; ++i) {
    std::vector<double> p(orders);
    specfun::legendre_assoc_normalized_row(ell, std::cos(thetas[i]), p);
    double* dst = out.data() + i * cols;
    std::fill(dst, dst + cols, 0.0);
    for (std::size_t m = 0; m < orders; ++m) {
      const double a = p[m] * cos_coeffs[m];
      const double b = p[m] * sin_coeffs[m];
      if (a == 0.0 && b == 0.0) continue;
      const double* ct = cos_table.data() + m * cols;
      const double* st = sin_table.data() + m * cols;
      for (std::size_t j = 0; j < cols; ++j) dst[j] += a * ct[j] + b * st[j];
    }
  }
}

void legendre_fourier_direct(int ell, std::span<const double> cos_coeffs,
                             std::span<const double> sin_coeffs, std::span<const double> thetas,
                             int n_phi, std::span<double> out) {
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    const double x = std::cos(thetas[i]);
    for (int j = 0; j < n_phi; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / n_phi;
      double sum = 0.0;
      for (int m = 0; m <= ell; ++m) {
        const double p = specfun::legendre_assoc_normalized(ell, m, x);
        sum += p * (cos_coeffs[m] * std::cos(m * phi) + sin_coeffs[m] * std::sin(m * phi));
      }
      out[i * n_phi + j] = sum;
    }
  }
}

}  // namespace nodalmc::kernels
