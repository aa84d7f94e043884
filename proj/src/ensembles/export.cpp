#include "nodalmc/export.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "nodalmc/error.hpp"

namespace nodalmc {
namespace {

const char* kind_name(GridKind k) {
  switch (k) {
    case GridKind::torus2: return "torus2";
    case GridKind::sphere: return "sphere";
    case GridKind::plane_chart: return "plane_chart";
  }
  return "?";
}

}  // namespace

nlohmann::json sample_header(const FieldSample& s) {
  const GridGeometry& g = s.geometry;
  nlohmann::json h;
  h["schema"] = 1;
  h["geometry"] = {{"kind", kind_name(g.kind())},
                   {"rows", g.rows()},
                   {"cols", g.cols()},
                   {"side", g.side()},
                   {"u0", g.u(0.0)},
                   {"du", g.du()},
                   {"v0", g.v(0.0)},
                   {"dv", g.dv()}};
  h["ensemble"] = {{"name", s.ensemble.ensemble},
                   {"parameters", s.ensemble.parameters},
                   {"law", s.ensemble.law}};
  h["seed"] = s.ensemble.master_seed;
  h["replicate"] = s.ensemble.replicate;
  h["frequency_scale"] = s.frequency_scale;
  h["wavenumber"] = s.wavenumber;
  return h;
}

void write_values_csv(std::ostream& os, const FieldSample& s) {
  const GridGeometry& g = s.geometry;
  os << std::setprecision(17);
  for (int i = 0; i < g.rows(); ++i) {
    for (int j = 0; j < g.cols(); ++j) {
      if (j) os << ',';
      os << s.values[g.index(i, j)];
    }
    os << '\n';
  }
}

nlohmann::json export_sample(const FieldSample& s, const std::string& prefix, ValueFormat format) {
  nlohmann::json h = sample_header(s);
  const std::string values_path = prefix + (format == ValueFormat::csv ? ".csv" : ".bin");
  h["values"] = {{"file", values_path},
                 {"format", format == ValueFormat::csv ? "csv" : "float64-le"},
                 {"layout", "row-major"}};
  {
    std::ofstream out(values_path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + values_path);
    if (format == ValueFormat::csv) {
      write_values_csv(out, s);
    } else {
      static_assert(std::endian::native == std::endian::little, "binary export assumes little-endian");
      out.write(reinterpret_cast<const char*>(s.values.data()),
                static_cast<std::streamsize>(s.values.size() * sizeof(double)));
    }
  }
  std::ofstream hdr(prefix + ".json");
  if (!hdr) throw ValidationError("cannot write " + prefix + ".json");
  hdr << h.dump(2) << '\n';
  return h;
}

}  // namespace nodalmc
