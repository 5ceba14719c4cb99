#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "knotlab/geometry.hpp"

namespace knotlab {

/// One line of a polygon/arc NDJSON stream:
/// {"kind":"polygon"|"arc","vertices":[[x,y,z],...]}
struct ShapeRecord {
  enum class Kind { polygon, arc };
  Kind kind = Kind::polygon;
  std::vector<Vec3> vertices;

  Polygon3 as_polygon() const;
  OpenArc as_arc() const;
};

/// Serializes one record (no trailing newline). Coordinates use 17
/// significant digits so doubles round-trip exactly.
std::string to_ndjson(const ShapeRecord &record);
std::string to_ndjson(const Polygon3 &polygon);
std::string to_ndjson(const OpenArc &arc);

ShapeRecord parse_ndjson_line(const std::string &line);

/// Reads every non-blank line of the stream.
std::vector<ShapeRecord> read_ndjson(std::istream &in);

/// Formats a double with 17 significant digits.
std::string format_double(double v);

} // namespace knotlab
