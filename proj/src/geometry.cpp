#include "knotlab/geometry.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace knotlab {

Vec3 normalized(const Vec3 &a) {
  const double n = norm(a);
  if (!(n > 0.0) || !std::isfinite(n))
    throw GeometryError("cannot normalize a zero or non-finite vector");
  return a * (1.0 / n);
}

namespace {

void check_finite(std::span<const Vec3> vs) {
  for (const auto &v : vs)
    if (!is_finite(v))
      throw GeometryError("non-finite vertex coordinate");
}

bool length_matches(double measured, double expected) {
  return std::abs(measured - expected) <= kEdgeTolerance * std::max(1.0, expected);
}

} // namespace

OpenArc::OpenArc(std::vector<Vec3> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 2)
    throw GeometryError("an open arc needs at least one edge");
  check_finite(vertices_);
  for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
    if (!length_matches(distance(vertices_[i], vertices_[i + 1]), 1.0))
      throw GeometryError("open arc edge " + std::to_string(i) + " is not unit length");
  }
}

Polygon3::Polygon3(std::vector<Vec3> vertices)
    : Polygon3(std::move(vertices), std::vector<double>{}) {}

Polygon3::Polygon3(std::vector<Vec3> vertices, std::vector<double> edge_lengths)
    : vertices_(std::move(vertices)), edge_lengths_(std::move(edge_lengths)) {
  const std::size_t n = vertices_.size();
  if (n < 3)
    throw GeometryError("a closed polygon needs at least three vertices");
  check_finite(vertices_);
  if (edge_lengths_.empty())
    edge_lengths_.assign(n, 1.0);
  if (edge_lengths_.size() != n)
    throw GeometryError("edge length count does not match vertex count");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(edge_lengths_[i] > 0.0))
      throw GeometryError("edge lengths must be positive");
    if (!length_matches(distance(vertices_[i], vertices_[(i + 1) % n]), edge_lengths_[i]))
      throw GeometryError("polygon edge " + std::to_string(i) +
                          " does not match its prescribed length");
  }
}

Polygon3 Polygon3::from_vertices(std::vector<Vec3> vertices) {
  const std::size_t n = vertices.size();
  if (n < 3)
    throw GeometryError("a closed polygon needs at least three vertices");
  check_finite(vertices);
  std::vector<double> lengths(n);
  for (std::size_t i = 0; i < n; ++i) {
    lengths[i] = distance(vertices[i], vertices[(i + 1) % n]);
    if (!(lengths[i] > 0.0))
      throw GeometryError("polygon has a zero-length edge");
  }
  return Polygon3(Unchecked{}, std::move(vertices), std::move(lengths));
}

Polygon3 Polygon3::mirrored() const {
  std::vector<Vec3> out(vertices_.begin(), vertices_.end());
  for (auto &v : out)
    v.z = -v.z;
  return Polygon3(Unchecked{}, std::move(out), edge_lengths_);
}

double end_to_end(const OpenArc &arc) { return distance(arc.front(), arc.back()); }

double support_height(std::span<const Vec3> points, const Vec3 &w) {
  if (points.empty())
    throw GeometryError("support height of an empty point set");
  if (std::abs(norm(w) - 1.0) > 1e-12)
    throw GeometryError("support direction must be a unit vector");
  double best = -std::numeric_limits<double>::infinity();
  for (const auto &p : points)
    best = std::max(best, dot(w, p));
  return best;
}

Vec3 rotate_vector(const Vec3 &v, const Vec3 &k, double angle) {
  // Rodrigues' formula.
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return v * c + cross(k, v) * s + k * (dot(k, v) * (1.0 - c));
}

std::vector<Vec3> rotate_about_axis(std::span<const Vec3> points, const Vec3 &axis_point,
                                    const Vec3 &axis_dir, double angle) {
  const Vec3 k = normalized(axis_dir);
  std::vector<Vec3> out;
  out.reserve(points.size());
  for (const auto &p : points)
    out.push_back(axis_point + rotate_vector(p - axis_point, k, angle));
  return out;
}

Vec3 any_orthogonal(const Vec3 &w) {
  // Cross with the coordinate axis least aligned with w.
  const double ax = std::abs(w.x), ay = std::abs(w.y), az = std::abs(w.z);
  Vec3 e{1, 0, 0};
  if (ay <= ax && ay <= az)
    e = {0, 1, 0};
  else if (az <= ax && az <= ay)
    e = {0, 0, 1};
  return normalized(cross(w, e));
}

} // namespace knotlab
