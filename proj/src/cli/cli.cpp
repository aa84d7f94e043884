#include "nodalmc/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "nodalmc/error.hpp"
#include "nodalmc/export.hpp"
#include "nodalmc/mc.hpp"
#include "nodalmc/parallel.hpp"
#include "nodalmc/specfun.hpp"

namespace nodalmc::cli {
namespace {

using json = nlohmann::json;

std::string num(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

template <class T>
std::string list(const std::vector<T>& xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ',';
    if constexpr (std::is_floating_point_v<T>) {
      s += num(xs[i]);
    } else {
      s += std::to_string(xs[i]);
    }
  }
  return s + "]";
}

EnsembleSpec ensemble_spec(const RunConfig& c) {
  EnsembleSpec e;
  e.kind = parse_ensemble_kind(c.ensemble);
  e.n = c.n;
  e.dim = c.dim;
  e.T = c.T;
  e.rho = c.rho;
  e.ell = c.ell;
  e.basis = parse_sphere_basis(c.basis);
  e.J = c.J;
  return e;
}

ExperimentSpec experiment_spec(const RunConfig& c, const std::string& law, std::uint64_t seed) {
  ExperimentSpec s;
  s.ensemble = ensemble_spec(c);
  s.law = CoefficientLaw::parse(law);
  s.grid = c.grid;
  s.chart_side = c.chart_side;
  s.replicates = c.m;
  s.seed = seed;
  s.measurement.kind = parse_measurement_kind(c.measurement);
  s.measurement.center = {c.center_u, c.center_v};
  s.measurement.radius = c.radius;
  s.measurement.tau = c.tau;
  s.richardson = c.richardson;
  return s;
}

json summary_json(const MCSummary& s) {
  return {{"replicates", s.replicates},
          {"mean", s.mean},
          {"variance", s.variance},
          {"std_error", s.std_error},
          {"ci95", {s.ci95.first, s.ci95.second}},
          {"fingerprint", s.fingerprint}};
}

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool is_table(const json& v) {
  return v.is_array() && !v.empty() &&
         std::all_of(v.begin(), v.end(), [](const json& r) { return r.is_object(); });
}

void flatten(const json& v, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& scalars,
             std::vector<std::pair<std::string, const json*>>& tables) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), scalars, tables);
    }
  } else if (is_table(v)) {
    tables.emplace_back(prefix, &v);
  } else {
    scalars.emplace_back(prefix, scalar_text(v));
  }
}

std::vector<std::string> columns_of(const json& rows) {
  std::vector<std::string> cols;
  for (const auto& r : rows) {
    for (auto it = r.begin(); it != r.end(); ++it) {
      if (std::find(cols.begin(), cols.end(), it.key()) == cols.end()) cols.push_back(it.key());
    }
  }
  return cols;
}

void write_document(std::ostream& os, const json& doc, const std::string& format) {
  if (format == "json") {
    os << doc.dump(2) << '\n';
    return;
  }
  std::vector<std::pair<std::string, std::string>> scalars;
  std::vector<std::pair<std::string, const json*>> tables;
  json head = doc;
  head.erase("config");
  flatten(head, "", scalars, tables);
  if (format == "csv") {
    for (const auto& [k, v] : scalars) os << "# " << k << '=' << v << '\n';
    for (const auto& [name, rows] : tables) {
      os << "# table=" << name << '\n';
      const auto cols = columns_of(*rows);
      for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
      os << '\n';
      for (const auto& r : *rows) {
        for (std::size_t i = 0; i < cols.size(); ++i) {
          os << (i ? "," : "") << (r.contains(cols[i]) ? scalar_text(r[cols[i]]) : "");
        }
        os << '\n';
      }
    }
    return;
  }
  std::size_t width = 0;
  for (const auto& [k, v] : scalars) width = std::max(width, k.size());
  for (const auto& [k, v] : scalars) os << std::left << std::setw(static_cast<int>(width) + 2) << k << v << '\n';
  for (const auto& [name, rows] : tables) {
    os << '\n' << name << '\n';
    const auto cols = columns_of(*rows);
    std::vector<std::size_t> w(cols.size());
    for (std::size_t i = 0; i < cols.size(); ++i) {
      w[i] = cols[i].size();
      for (const auto& r : *rows) {
        if (r.contains(cols[i])) w[i] = std::max(w[i], scalar_text(r[cols[i]]).size());
      }
    }
    for (std::size_t i = 0; i < cols.size(); ++i) os << std::right << std::setw(static_cast<int>(w[i]) + 2) << cols[i];
    os << '\n';
    for (const auto& r : *rows) {
      for (std::size_t i = 0; i < cols.size(); ++i) {
        os << std::right << std::setw(static_cast<int>(w[i]) + 2)
           << (r.contains(cols[i]) ? scalar_text(r[cols[i]]) : "");
      }
      os << '\n';
    }
  }
}

// ---- subcommands ---------------------------------------------------------

json cmd_kacrice(const RunConfig& c) {
  const specfun::KernelSpec k{c.dim, c.upsilon};
  json r;
  r["dimension"] = c.dim;
  r["upsilon"] = c.upsilon;
  r["density"] = specfun::kac_rice_density(k);
  r["second_moment"] = specfun::spectral_second_moment(k);
  r["formula"] = c.upsilon == 1.0
                     ? "sqrt(4 pi / n) Gamma((n+1)/2) / Gamma(n/2); expected nodal volume per unit "
                       "volume at unit frequency, e(t) = exp(2 pi i t)"
                     : "s Gamma((n+1)/2) / (sqrt(pi) Gamma(n/2)), s^2 = ((2 pi)^2 / n) (n/(n+2)) "
                       "(1 - U^(n+2)) / (1 - U^n)";
  return r;
}

json cmd_lattice(const RunConfig& c) {
  FrequencySet fs;
  if (c.arw >= 0) {
    if (c.arw < 1) throw DomainError("lattice: --arw needs n >= 1");
    fs = circle_points(c.arw);
  } else {
    const auto e = ensemble_spec(c);
    switch (e.kind) {
      case EnsembleKind::arw:
        fs = circle_points(e.n);
        break;
      case EnsembleKind::torus_window:
        fs = annulus_points(e.dim, e.T, e.rho > 0.0 ? e.rho : e.T / std::log(e.T));
        break;
      case EnsembleKind::sphere:
        fs = sphere_degree(e.ell);
        break;
      case EnsembleKind::rwm:
        throw ValidationError("lattice: rwm has no frequency lattice");
    }
  }
  json r;
  r["kind"] = fs.kind_name();
  switch (fs.kind) {
    case SpectrumKind::arw:
      r["n"] = fs.n;
      break;
    case SpectrumKind::torus_window:
      r["dim"] = fs.dim;
      r["T"] = fs.T;
      r["rho"] = fs.rho;
      r["flagged_empty"] = fs.flagged_empty;
      r["asymptotic_count"] = asymptotic_mode_count(fs);
      break;
    case SpectrumKind::sphere:
      r["ell"] = fs.ell;
      break;
  }
  r["count"] = fs.count;
  json pts = json::array();
  for (const auto& p : fs.points) {
    json v = json::array();
    for (int d = 0; d < fs.dim; ++d) v.push_back(p[d]);
    pts.push_back(v);
  }
  r["points"] = pts;
  return r;
}

void write_per_replicate(const std::string& path, const ExpectationResult& res,
                         const RunConfig& c, const std::string& fingerprint) {
  std::ofstream os(path);
  if (!os) throw ValidationError("cannot write " + path);
  os << "# seed=" << c.seed << "\n# fingerprint=" << fingerprint << '\n';
  os << (res.coarse_values.empty() ? "replicate,value\n" : "replicate,value,coarse_value\n");
  os << std::setprecision(17);
  for (std::size_t i = 0; i < res.values.size(); ++i) {
    os << i << ',' << res.values[i];
    if (!res.coarse_values.empty()) os << ',' << res.coarse_values[i];
    os << '\n';
  }
}

json cmd_expectation(const RunConfig& c, const std::string& fingerprint) {
  const auto spec = experiment_spec(c, c.law, c.seed);
  const auto res = mc_expectation(spec);
  json r;
  r["measurement"] = c.measurement;
  r["raw"] = summary_json(res.raw);
  if (res.coarse) r["coarse"] = summary_json(*res.coarse);
  if (res.extrapolated) r["extrapolated"] = summary_json(*res.extrapolated);
  r["excluded_region_bound"] = res.excluded_region_bound;
  r["vlogv_mean"] = res.vlogv_mean;
  const Ensemble ens(spec.ensemble);
  if (spec.measurement.kind == MeasurementKind::global_length && ens.spec().kind != EnsembleKind::rwm &&
      !(ens.spec().kind == EnsembleKind::torus_window && ens.spec().dim == 1)) {
    // Kac-Rice reference: density * frequency * area of the manifold.
    const double area = ens.planar() ? 1.0 : 4.0 * std::numbers::pi;
    r["kac_rice_reference"] =
        specfun::kac_rice_density({2, 1.0}) * ens.wavenumber() / (2.0 * std::numbers::pi) * area;
  }
  if (!c.per_replicate.empty()) write_per_replicate(c.per_replicate, res, c, fingerprint);
  return r;
}

json cmd_compare(const RunConfig& c) {
  const std::uint64_t seed_b = c.seed_b != 0 ? c.seed_b : c.seed + 1;
  const auto a = experiment_spec(c, c.law, c.seed);
  auto b = experiment_spec(c, c.law_b, seed_b);
  const auto res = distribution_compare(a, b, c.permutations);
  json r;
  r["measurement"] = c.measurement;
  r["law_a"] = a.law.name();
  r["law_b"] = b.law.name();
  r["seed_b"] = seed_b;
  r["ks"] = res.ks;
  r["p_value"] = res.p_value;
  r["permutations"] = res.permutations;
  r["a"] = summary_json(res.a);
  r["b"] = summary_json(res.b);
  return r;
}

json cmd_variance_scan(const RunConfig& c, std::ostream& err) {
  if (c.ladder.size() < 3) throw ValidationError("variance-scan needs --ladder with >= 3 values");
  std::vector<ExperimentSpec> specs;
  for (double p : c.ladder) {
    auto s = experiment_spec(c, c.law, c.seed);
    switch (s.ensemble.kind) {
      case EnsembleKind::arw: s.ensemble.n = std::lround(p); break;
      case EnsembleKind::sphere: s.ensemble.ell = static_cast<int>(std::lround(p)); break;
      case EnsembleKind::torus_window: s.ensemble.T = p; break;
      case EnsembleKind::rwm: s.ensemble.J = static_cast<int>(std::lround(p)); break;
    }
    specs.push_back(s);
  }
  const auto scan = variance_scan(specs, c.ladder);
  json rows = json::array();
  const double lo = 4.0 * std::numbers::pi * std::numbers::pi / 512.0;
  const double hi = 4.0 * std::numbers::pi * std::numbers::pi / 256.0;
  for (const auto& row : scan.rows) {
    json j = {{"parameter", row.parameter},
              {"modes", row.modes},
              {"mean", row.summary.mean},
              {"variance", row.summary.variance},
              {"std_error", row.summary.std_error},
              {"variance_se", row.variance_se},
              {"vlogv_mean", row.vlogv_mean}};
    if (specs.front().ensemble.kind == EnsembleKind::arw) {
      const double r2 = static_cast<double>(row.modes);
      const double normalized = row.summary.variance * r2 * r2 / row.parameter;
      j["variance_r2sq_over_n"] = normalized;
      err << "variance-scan: n=" << row.parameter << " var*r2^2/n=" << normalized
          << (normalized >= lo && normalized <= hi ? " inside" : " outside") << " [" << lo << ", "
          << hi << "]\n";
    }
    rows.push_back(j);
  }
  json r;
  r["rows"] = rows;
  r["loglog_slope"] = std::isfinite(scan.loglog_slope) ? json(scan.loglog_slope) : json(nullptr);
  return r;
}

json cmd_covariance(const RunConfig& c) {
  const Ensemble ens(ensemble_spec(c));
  const auto law = CoefficientLaw::parse(c.law);
  const GridGeometry g = ens.natural_geometry(c.grid, c.chart_side);
  ens.check_geometry(g);
  std::vector<FieldSample> samples(c.m);
  const long count = static_cast<long>(c.m);
  std::vector<std::string> errors(c.m);
#pragma omp parallel for schedule(dynamic, 1) if (parallel::outermost())
  for (long r = 0; r < count; ++r) {
    try {
      samples[r] = ens.sample(law, g, {c.seed, static_cast<std::uint64_t>(r)});
    } catch (const std::exception& e) {
      errors[r] = e.what();
    }
  }
  for (std::size_t r = 0; r < c.m; ++r) {
    if (!errors[r].empty()) throw ValidationError("replicate " + std::to_string(r) + ": " + errors[r]);
  }
  json rows = json::array();
  for (int lag : c.lags) {
    if (lag < 0) throw DomainError("lags must be >= 0");
    std::vector<NodePair> pairs;
    double distance = 0.0;
    double theory = 0.0;
    const auto kind = ens.spec().kind;
    if (kind == EnsembleKind::sphere) {
      if (lag >= g.rows()) throw ValidationError("lag exceeds the sphere grid");
      for (int i = 0; i + lag < g.rows(); ++i) {
        for (int j = 0; j < g.cols(); ++j) pairs.push_back({i, j, i + lag, j});
      }
      distance = lag * g.dv();
      theory = specfun::legendre_p(ens.spec().ell, std::cos(distance));
    } else if (kind == EnsembleKind::rwm) {
      if (lag >= g.cols()) throw ValidationError("lag exceeds the chart");
      for (int i = 0; i < g.rows(); ++i) {
        for (int j = 0; j + lag < g.cols(); ++j) pairs.push_back({i, j, i, j + lag});
      }
      distance = lag * g.du();
      theory = specfun::bessel_j(0, 2.0 * std::numbers::pi * distance);
    } else {
      for (int i = 0; i < g.rows(); ++i) {
        for (int j = 0; j < g.cols(); ++j) pairs.push_back({i, j, i, (j + lag) % g.cols()});
      }
      distance = lag * g.du();
      double sum = 0.0;
      for (const auto& k : ens.frequencies().points) sum += std::cos(2.0 * std::numbers::pi * k[0] * distance);
      theory = sum / static_cast<double>(ens.frequencies().count);
    }
    const auto est = pooled_covariance(samples, pairs);
    json row = {{"lag", lag},
                {"distance", distance},
                {"estimate", est.mean},
                {"std_error", est.std_error},
                {"theory", theory},
                {"abs_diff", std::abs(est.mean - theory)}};
    if (kind == EnsembleKind::torus_window && ens.spec().dim == 2) {
      const double ups = 1.0 - ens.spec().rho / ens.spec().T;
      row["isotropic_kernel"] = specfun::isotropic_kernel({2, ups}, ens.spec().T * distance);
    }
    rows.push_back(row);
  }
  json r;
  r["grid"] = g.describe();
  r["samples"] = c.m;
  r["rows"] = rows;
  return r;
}

json cmd_small_ball(const RunConfig& c) {
  const Ensemble ens(ensemble_spec(c));
  const auto law = CoefficientLaw::parse(c.law);
  const auto props = small_ball_probabilities(ens, law, c.seed, {c.center_u, c.center_v}, c.taus, c.m);
  const double inv_sqrt_modes = 1.0 / std::sqrt(static_cast<double>(ens.modes()));
  json rows = json::array();
  for (std::size_t i = 0; i < props.size(); ++i) {
    const double tau = c.taus[i];
    rows.push_back({{"tau", tau},
                    {"estimate", props[i].estimate},
                    {"std_error", props[i].std_error},
                    {"hits", props[i].hits},
                    {"envelope", 10.0 * (tau + inv_sqrt_modes)},
                    {"gaussian_reference", std::erf(tau / std::numbers::sqrt2)}});
  }
  json r;
  r["modes"] = ens.modes();
  r["point"] = {c.center_u, c.center_v};
  r["rows"] = rows;
  return r;
}

json cmd_locality(const RunConfig& c) {
  const Ensemble ens(ensemble_spec(c));
  const auto batch = locality_batch(ens, CoefficientLaw::parse(c.law), c.seed, c.m, c.grid, c.centers);
  json rows = json::array();
  for (std::size_t r = 0; r < batch.samples.size(); ++r) {
    const auto& s = batch.samples[r];
    rows.push_back({{"replicate", r},
                    {"global_length", s.global_length},
                    {"reconstructed", s.reconstructed},
                    {"relative_discrepancy", s.relative_discrepancy}});
  }
  json r;
  r["lambda"] = ens.frequency_scale();
  r["centers"] = c.centers * c.centers;
  r["mean_relative_discrepancy"] = batch.mean_relative_discrepancy;
  r["rows"] = rows;
  return r;
}

json cmd_sample(const RunConfig& c) {
  const Ensemble ens(ensemble_spec(c));
  const auto law = CoefficientLaw::parse(c.law);
  const SeedStream stream{c.seed, c.replicate};
  const auto sample = ens.sample(law, ens.natural_geometry(c.grid, c.chart_side), stream);
  if (c.values != "csv" && c.values != "bin") throw ValidationError("--values must be csv or bin");
  const std::string prefix = c.out.empty() ? "nodal_sample" : c.out;
  json r;
  r["header"] = export_sample(sample, prefix, c.values == "csv" ? ValueFormat::csv : ValueFormat::binary);
  const auto est = nodal_length(sample);
  r["nodal_length"] = est.length;
  r["grid_step"] = est.grid_step;
  r["excluded_region_bound"] = est.excluded_region_bound;
  if (!c.contours.empty()) {
    std::ofstream os(c.contours);
    if (!os) throw ValidationError("cannot write " + c.contours);
    write_segments_csv(os, extract_segments(sample));
    r["contours"] = c.contours;
  }
  return r;
}

const std::vector<std::pair<std::string, std::string>> kCommands = {
    {"sample", "synthesize one realization and export it with its nodal length"},
    {"expectation", "Monte Carlo mean of a measurement"},
    {"compare", "KS distance and permutation p-value between two coefficient laws"},
    {"variance-scan", "variance of the measurement over a parameter ladder"},
    {"covariance-check", "pooled empirical covariance against the kernel"},
    {"small-ball", "P(|f(x)| <= tau) with binomial errors"},
    {"lattice", "print a frequency set"},
    {"kacrice", "expected nodal volume per unit volume"},
    {"locality-check", "global length against the ball-average reconstruction"},
};

const CLI::Validator kLawName(
    [](std::string& text) {
      try {
        CoefficientLaw::parse(text);
      } catch (const std::exception& e) {
        return std::string(e.what());
      }
      return std::string();
    },
    "LAW");

void add_options(CLI::App& app, RunConfig& c) {
  app.add_option("--ensemble", c.ensemble, "arw | sphere | torus-window | rwm")
      ->check(CLI::IsMember({"arw", "sphere", "torus-window", "rwm"}));
  app.add_option("--n", c.n, "arw: |mu|^2 = n");
  app.add_option("--ell", c.ell, "sphere degree");
  app.add_option("--T", c.T, "torus window upper frequency");
  app.add_option("--rho", c.rho, "torus window width (<= 0: T / log T)");
  app.add_option("--J", c.J, "rwm plane-wave count");
  app.add_option("--dim", c.dim, "torus window / kacrice dimension");
  app.add_option("--basis", c.basis, "sphere basis: real | complex-bernoulli")
      ->check(CLI::IsMember({"real", "complex-bernoulli"}));
  app.add_option("--law", c.law, "gaussian | rademacher | uniform | two-point:p")->check(kLawName);
  app.add_option("--law-b", c.law_b, "second law for compare")->check(kLawName);
  app.add_option("--grid", c.grid, "grid size N");
  app.add_option("--chart-side", c.chart_side, "rwm chart side length");
  app.add_option("--m", c.m, "replicates");
  app.add_option("--seed", c.seed, "master seed")->envname("NODAL_MC_SEED");
  app.add_option("--seed-b", c.seed_b, "compare: seed of the second spec (0: seed + 1)");
  app.add_option("--replicate", c.replicate, "sample: stream index");
  app.add_option("--workers", c.workers, "OpenMP threads (0: default)");
  app.add_option("--measurement", c.measurement, "global_length | restricted_length | small_ball")
      ->check(CLI::IsMember({"global_length", "restricted_length", "small_ball"}));
  app.add_option("--center-u", c.center_u, "ball centre / point, first coordinate");
  app.add_option("--center-v", c.center_v, "ball centre / point, second coordinate");
  app.add_option("--radius", c.radius, "restricted ball radius at unit frequency");
  app.add_option("--tau", c.tau, "small-ball threshold for expectation");
  app.add_option("--taus", c.taus, "small-ball thresholds")->delimiter(',');
  app.add_flag("--richardson", c.richardson, "also run grid/2 and extrapolate");
  app.add_option("--permutations", c.permutations, "compare: label permutations");
  app.add_option("--ladder", c.ladder, "variance-scan parameters")->delimiter(',');
  app.add_option("--lags", c.lags, "covariance-check lags in grid steps")->delimiter(',');
  app.add_option("--centers", c.centers, "locality-check centres per side");
  app.add_option("--arw", c.arw, "lattice: circle |mu|^2 = n");
  app.add_option("--upsilon", c.upsilon, "kacrice inner fraction");
  app.add_option("--values", c.values, "sample value file: csv | bin");
  app.add_option("--out", c.out, "output path (sample: export prefix)")->configurable(false);
  app.add_option("--format", c.format, "json | csv | table")
      ->check(CLI::IsMember({"json", "csv", "table"}))
      ->configurable(false);
  app.add_option("--per-replicate", c.per_replicate, "expectation: per-replicate CSV")->configurable(false);
  app.add_option("--contours", c.contours, "sample: contour segment CSV")->configurable(false);
}

}  // namespace

std::vector<std::pair<std::string, std::string>> resolved_items(const RunConfig& c) {
  return {{"ensemble", c.ensemble},
          {"n", std::to_string(c.n)},
          {"ell", std::to_string(c.ell)},
          {"T", num(c.T)},
          {"rho", num(c.rho)},
          {"J", std::to_string(c.J)},
          {"dim", std::to_string(c.dim)},
          {"basis", c.basis},
          {"law", c.law},
          {"law-b", c.law_b},
          {"grid", std::to_string(c.grid)},
          {"chart-side", num(c.chart_side)},
          {"m", std::to_string(c.m)},
          {"seed", std::to_string(c.seed)},
          {"seed-b", std::to_string(c.seed_b)},
          {"replicate", std::to_string(c.replicate)},
          {"measurement", c.measurement},
          {"center-u", num(c.center_u)},
          {"center-v", num(c.center_v)},
          {"radius", num(c.radius)},
          {"tau", num(c.tau)},
          {"taus", list(c.taus)},
          {"richardson", c.richardson ? "true" : "false"},
          {"permutations", std::to_string(c.permutations)},
          {"ladder", list(c.ladder)},
          {"lags", list(c.lags)},
          {"centers", std::to_string(c.centers)},
          {"arw", std::to_string(c.arw)},
          {"upsilon", num(c.upsilon)},
          {"values", c.values}};
}

std::string config_fingerprint(const RunConfig& c) {
  std::string text = "command=" + c.command;
  for (const auto& [k, v] : resolved_items(c)) text += ";" + k + "=" + v;
  return fnv1a_hex(text);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  std::string save_config;
  CLI::App app{"Monte Carlo nodal-length laboratory", "nodal_mc"};
  app.require_subcommand(1);
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  app.add_option("--save-config", save_config, "write the resolved config to this file")->configurable(false);
  add_options(app, c);
  for (const auto& [name, help] : kCommands) {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    sub->callback([&c, n = name] { c.command = n; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return usage_error;
  }

  try {
    if (c.workers < 0) throw ValidationError("--workers must be >= 0");
#ifdef _OPENMP
    if (c.workers > 0) omp_set_num_threads(c.workers);
#endif
    const std::string fingerprint = config_fingerprint(c);
    if (!save_config.empty()) {
      std::ofstream os(save_config);
      if (!os) throw ValidationError("cannot write " + save_config);
      for (const auto& [k, v] : resolved_items(c)) {
        if (v != "[]") os << k << '=' << v << '\n';  // empty lists are the defaults
      }
    }
    json result;
    if (c.command == "kacrice") result = cmd_kacrice(c);
    else if (c.command == "lattice") result = cmd_lattice(c);
    else if (c.command == "expectation") result = cmd_expectation(c, fingerprint);
    else if (c.command == "compare") result = cmd_compare(c);
    else if (c.command == "variance-scan") result = cmd_variance_scan(c, err);
    else if (c.command == "covariance-check") result = cmd_covariance(c);
    else if (c.command == "small-ball") result = cmd_small_ball(c);
    else if (c.command == "locality-check") result = cmd_locality(c);
    else if (c.command == "sample") result = cmd_sample(c);

    json doc;
    doc["schema"] = 1;
    doc["command"] = c.command;
    doc["seed"] = c.seed;
    doc["fingerprint"] = fingerprint;
    json cfg = json::object();
    for (const auto& [k, v] : resolved_items(c)) cfg[k] = v;
    doc["config"] = cfg;
    doc["result"] = result;
    if (c.out.empty() || c.command == "sample") {
      write_document(out, doc, c.format);
    } else {
      std::ofstream os(c.out);
      if (!os) throw ValidationError("cannot write " + c.out);
      write_document(os, doc, c.format);
    }
    return ok;
  } catch (const std::exception& e) {
    err << "nodal_mc " << c.command << ": " << e.what() << '\n';
    return validation_error;
  }
}

}  // namespace nodalmc::cli
