#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "nodalmc/ensembles.hpp"

namespace nodalmc {

enum class ValueFormat { csv, binary };

/// Geometry, ensemble descriptor, seed and replicate of a sample.
nlohmann::json sample_header(const FieldSample& sample);

/// Writes <prefix>.json (header) and <prefix>.csv or <prefix>.bin (values,
/// row-major; binary is little-endian float64). Returns the header written.
nlohmann::json export_sample(const FieldSample& sample, const std::string& prefix,
                             ValueFormat format);

/// CSV body: one grid row per line.
void write_values_csv(std::ostream& os, const FieldSample& sample);

}  // namespace nodalmc
