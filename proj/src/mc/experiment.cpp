#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include "nodalmc/error.hpp"
#include "nodalmc/mc.hpp"
#include "nodalmc/parallel.hpp"

namespace nodalmc {

std::string to_string(MeasurementKind kind) {
  switch (kind) {
    case MeasurementKind::global_length: return "global_length";
    case MeasurementKind::restricted_length: return "restricted_length";
    case MeasurementKind::small_ball: return "small_ball";
  }
  return "?";
}

MeasurementKind parse_measurement_kind(const std::string& text) {
  if (text == "global_length" || text == "global") return MeasurementKind::global_length;
  if (text == "restricted_length" || text == "restricted") return MeasurementKind::restricted_length;
  if (text == "small_ball") return MeasurementKind::small_ball;
  throw ValidationError("unknown measurement '" + text + "'");
}

std::string ExperimentSpec::canonical() const {
  std::ostringstream os;
  os.precision(17);
  os << "ensemble=" << to_string(ensemble.kind) << ";n=" << ensemble.n << ";dim=" << ensemble.dim
     << ";T=" << ensemble.T << ";rho=" << ensemble.rho << ";ell=" << ensemble.ell
     << ";basis=" << to_string(ensemble.basis) << ";J=" << ensemble.J << ";law=" << law.name()
     << ";grid=" << grid << ";chart_side=" << chart_side << ";m=" << replicates
     << ";seed=" << seed << ";measurement=" << to_string(measurement.kind)
     << ";center=" << measurement.center.u << ',' << measurement.center.v
     << ";radius=" << measurement.radius << ";tau=" << measurement.tau
     << ";richardson=" << (richardson ? 1 : 0);
  return os.str();
}

void ExperimentSpec::validate() const {
  if (replicates < 2) throw ValidationError("need at least 2 replicates");
  if (grid < 8) throw ValidationError("grid must be >= 8");
  const Ensemble ens(ensemble);
  switch (measurement.kind) {
    case MeasurementKind::global_length:
      ens.check_geometry(ens.natural_geometry(grid, chart_side));
      if (richardson) {
        if (grid % 2 != 0 || grid / 2 < 8) throw ValidationError("Richardson needs an even grid >= 16");
        ens.check_geometry(ens.natural_geometry(grid / 2, chart_side));
      }
      break;
    case MeasurementKind::restricted_length:
      if (!(measurement.radius > 0.0)) throw ValidationError("restricted radius must be positive");
      if (richardson) throw ValidationError("Richardson applies to global length only");
      if (!ens.planar()) {
        ens.check_geometry(ens.natural_geometry(grid));
        if (measurement.radius * 2.0 * std::numbers::pi / ens.wavenumber() > std::numbers::pi) {
          throw ValidationError("restricted ball larger than the sphere");
        }
      }
      break;
    case MeasurementKind::small_ball:
      if (!(measurement.tau > 0.0)) throw ValidationError("tau must be positive");
      if (richardson) throw ValidationError("Richardson applies to global length only");
      break;
  }
}

double measure_replicate(const ExperimentSpec& spec, const Ensemble& ens, std::uint64_t replicate,
                         int grid) {
  const SeedStream stream{spec.seed, replicate};
  const auto field = ens.draw(spec.law, stream);
  const Measurement& m = spec.measurement;
  switch (m.kind) {
    case MeasurementKind::global_length: {
      const auto sample =
          ens.sample(field, ens.natural_geometry(grid, spec.chart_side), ens.descriptor(spec.law, stream));
      return nodal_length(sample).length;
    }
    case MeasurementKind::restricted_length: {
      if (ens.planar()) {
        const auto chart = GridGeometry::plane_chart(grid, 2.0 * m.radius);
        const auto patch =
            ens.sample_patch(field, m.center.u, m.center.v, chart, ens.descriptor(spec.law, stream));
        return restricted_nodal_length(patch, {0.0, 0.0}, m.radius).length;
      }
      const auto sample =
          ens.sample(field, ens.natural_geometry(grid), ens.descriptor(spec.law, stream));
      const double unit = ens.wavenumber() / (2.0 * std::numbers::pi);
      return restricted_nodal_length(sample, m.center, m.radius / unit).length * unit;
    }
    case MeasurementKind::small_ball:
      return std::abs(field->value(m.center.u, m.center.v)) <= m.tau ? 1.0 : 0.0;
  }
  return 0.0;
}

namespace {

// Runs one measurement per replicate; the first failing index is reported.
std::vector<double> run_replicates(const ExperimentSpec& spec, const Ensemble& ens, int grid) {
  const std::size_t m = spec.replicates;
  std::vector<double> values(m, 0.0);
  std::vector<std::string> errors(m);
  const long count = static_cast<long>(m);
#pragma omp parallel for schedule(dynamic, 1) if (parallel::outermost())
  for (long r = 0; r < count; ++r) {
    try {
      values[r] = measure_replicate(spec, ens, static_cast<std::uint64_t>(r), grid);
    } catch (const std::exception& e) {
      errors[r] = e.what();
    }
  }
  for (std::size_t r = 0; r < m; ++r) {
    if (!errors[r].empty()) {
      throw ValidationError("replicate " + std::to_string(r) + ": " + errors[r]);
    }
  }
  return values;
}

double vlogv(std::span<const double> values) {
  std::vector<double> t(values.size(), 0.0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] > 0.0) t[i] = values[i] * std::log(values[i]);
  }
  return stable_sum(t) / static_cast<double>(values.size());
}

}  // namespace

ExpectationResult mc_expectation(const ExperimentSpec& spec) {
  spec.validate();
  const Ensemble ens(spec.ensemble);
  const std::string fp = spec.fingerprint();
  ExpectationResult out;
  out.values = run_replicates(spec, ens, spec.grid);
  out.raw = summarize(out.values, fp);
  out.vlogv_mean = vlogv(out.values);
  if (spec.measurement.kind == MeasurementKind::global_length) {
    out.excluded_region_bound =
        polar_cap_bound(ens.natural_geometry(spec.grid, spec.chart_side), ens.wavenumber());
  }
  if (spec.richardson) {
    out.coarse_values = run_replicates(spec, ens, spec.grid / 2);
    out.coarse = summarize(out.coarse_values, fp);
    std::vector<double> ex(out.values.size());
    for (std::size_t i = 0; i < ex.size(); ++i) ex[i] = richardson(out.values[i], out.coarse_values[i]);
    out.extrapolated = summarize(ex, fp);
  }
  return out;
}

double bootstrap_variance_se(std::span<const double> values, std::size_t resamples,
                             std::uint64_t seed) {
  if (values.size() < 2 || resamples < 2) throw DomainError("bootstrap needs >= 2 values and resamples");
  std::mt19937_64 rng(SeedStream{seed, 0x5eedb007ULL}.derived_seed());
  std::uniform_int_distribution<std::size_t> pick(0, values.size() - 1);
  std::vector<double> draw(values.size());
  std::vector<double> variances(resamples);
  for (std::size_t b = 0; b < resamples; ++b) {
    for (auto& d : draw) d = values[pick(rng)];
    variances[b] = summarize(draw).variance;
  }
  return std::sqrt(summarize(variances).variance);
}

VarianceScan variance_scan(std::span<const ExperimentSpec> specs, std::span<const double> parameters,
                           std::size_t bootstrap_resamples) {
  if (specs.size() < 3) throw ValidationError("variance scan needs a ladder of >= 3 parameters");
  if (parameters.size() != specs.size()) throw DomainError("one parameter per rung");
  VarianceScan scan;
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto res = mc_expectation(specs[i]);
    VarianceRow row;
    row.parameter = parameters[i];
    row.modes = Ensemble(specs[i].ensemble).modes();
    row.summary = res.raw;
    row.variance_se = bootstrap_variance_se(res.values, bootstrap_resamples, specs[i].seed);
    row.vlogv_mean = res.vlogv_mean;
    scan.rows.push_back(row);
    if (row.parameter > 0.0 && row.summary.variance > 0.0) {
      lx.push_back(std::log(row.parameter));
      ly.push_back(std::log(row.summary.variance));
    }
  }
  scan.loglog_slope = lx.size() >= 2 ? least_squares_slope(lx, ly) : std::nan("");
  return scan;
}

}  // namespace nodalmc
