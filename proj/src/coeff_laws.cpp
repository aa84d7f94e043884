#include "nodalmc/coeff_laws.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "nodalmc/error.hpp"

namespace nodalmc {

CoefficientLaw CoefficientLaw::two_point(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("two_point law needs p in (0, 1), got " + std::to_string(p));
  }
  return {LawKind::two_point, p};
}

CoefficientLaw CoefficientLaw::parse(std::string_view text) {
  if (text == "gaussian") return gaussian();
  if (text == "rademacher" || text == "bernoulli") return rademacher();
  if (text == "uniform") return uniform();
  constexpr std::string_view prefix = "two-point:";
  if (text.starts_with(prefix)) {
    const std::string number(text.substr(prefix.size()));
    std::size_t used = 0;
    double p = 0.0;
    try {
      p = std::stod(number, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != number.size()) {
      throw DomainError("cannot parse two-point probability in '" + std::string(text) + "'");
    }
    return two_point(p);
  }
  throw DomainError("unknown coefficient law '" + std::string(text) + "'");
}

std::string CoefficientLaw::name() const {
  switch (kind) {
    case LawKind::gaussian:
      return "gaussian";
    case LawKind::rademacher:
      return "rademacher";
    case LawKind::uniform:
      return "uniform";
    case LawKind::two_point: {
      char buf[64];
      auto res = std::to_chars(buf, buf + sizeof buf, p);
      return "two-point:" + std::string(buf, res.ptr);
    }
  }
  return "unknown";
}

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SeedStream::derived_seed() const {
  return mix64(master_seed ^ mix64(stream_index + 0x632be59bd9b4e019ULL));
}

CoefficientSampler::CoefficientSampler(CoefficientLaw law, SeedStream stream)
    : law_(law), engine_(stream.derived_seed()) {
  if (law_.kind == LawKind::two_point) law_ = CoefficientLaw::two_point(law_.p);
}

double CoefficientSampler::next() {
  switch (law_.kind) {
    case LawKind::gaussian:
      return normal_(engine_);
    case LawKind::rademacher:
      return (engine_() >> 63) ? 1.0 : -1.0;
    case LawKind::uniform:
      return std::numbers::sqrt3 * (2.0 * unit_(engine_) - 1.0);
    case LawKind::two_point: {
      const double p = law_.p;
      return unit_(engine_) < p ? std::sqrt((1.0 - p) / p) : -std::sqrt(p / (1.0 - p));
    }
  }
  return 0.0;
}

std::complex<double> CoefficientSampler::next_hermitian() {
  const double re = next();
  const double im = next();
  return {re / std::numbers::sqrt2, im / std::numbers::sqrt2};
}

double CoefficientSampler::uniform(double lo, double hi) {
  return lo + (hi - lo) * unit_(engine_);
}

std::vector<double> draw_real(const CoefficientLaw& law, const SeedStream& stream,
                              std::size_t count) {
  CoefficientSampler sampler(law, stream);
  std::vector<double> out(count);
  for (auto& v : out) v = sampler.next();
  return out;
}

std::vector<std::complex<double>> draw_hermitian_pair(const CoefficientLaw& law,
                                                      const SeedStream& stream,
                                                      std::size_t count) {
  CoefficientSampler sampler(law, stream);
  std::vector<std::complex<double>> out(count);
  for (auto& v : out) v = sampler.next_hermitian();
  return out;
}

}  // namespace nodalmc
