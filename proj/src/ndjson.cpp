#include "knotlab/ndjson.hpp"

#include <cstdio>
#include <istream>
#include <stdexcept>

#include <json.hpp>

namespace knotlab {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_ndjson(const ShapeRecord &record) {
  std::string out = R"({"kind":")";
  out += record.kind == ShapeRecord::Kind::polygon ? "polygon" : "arc";
  out += R"(","vertices":[)";
  for (std::size_t i = 0; i < record.vertices.size(); ++i) {
    const auto &v = record.vertices[i];
    if (i)
      out += ',';
    out += '[' + format_double(v.x) + ',' + format_double(v.y) + ',' + format_double(v.z) + ']';
  }
  out += "]}";
  return out;
}

std::string to_ndjson(const Polygon3 &polygon) {
  return to_ndjson(ShapeRecord{ShapeRecord::Kind::polygon,
                               {polygon.vertices().begin(), polygon.vertices().end()}});
}

std::string to_ndjson(const OpenArc &arc) {
  return to_ndjson(
      ShapeRecord{ShapeRecord::Kind::arc, {arc.vertices().begin(), arc.vertices().end()}});
}

ShapeRecord parse_ndjson_line(const std::string &line) {
  const auto j = nlohmann::json::parse(line);
  ShapeRecord rec;
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "polygon")
    rec.kind = ShapeRecord::Kind::polygon;
  else if (kind == "arc")
    rec.kind = ShapeRecord::Kind::arc;
  else
    throw std::runtime_error("unknown record kind: " + kind);
  for (const auto &v : j.at("vertices")) {
    if (v.size() != 3)
      throw std::runtime_error("vertex must have three coordinates");
    rec.vertices.push_back({v[0].get<double>(), v[1].get<double>(), v[2].get<double>()});
  }
  return rec;
}

std::vector<ShapeRecord> read_ndjson(std::istream &in) {
  std::vector<ShapeRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    out.push_back(parse_ndjson_line(line));
  }
  return out;
}

Polygon3 ShapeRecord::as_polygon() const {
  if (kind != Kind::polygon)
    throw std::runtime_error("record is not a polygon");
  return Polygon3::from_vertices(vertices);
}

OpenArc ShapeRecord::as_arc() const {
  if (kind != Kind::arc)
    throw std::runtime_error("record is not an arc");
  return OpenArc(vertices);
}

} // namespace knotlab
