#include "knotlab/direction_set.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace knotlab {

std::vector<Vec3> fibonacci_sphere(int count) {
  if (count < 1)
    throw GeometryError("direction count must be positive");
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<Vec3> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / count;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    out.push_back({r * std::cos(phi), r * std::sin(phi), z});
  }
  return out;
}

namespace {

// Area of the spherical triangle (a, b, c) on the unit sphere.
double triangle_area(const Vec3 &a, const Vec3 &b, const Vec3 &c) {
  const double num = std::abs(dot(a, cross(b, c)));
  const double den = 1.0 + dot(a, b) + dot(b, c) + dot(c, a);
  return 2.0 * std::atan2(num, den);
}

} // namespace

std::vector<double> spherical_voronoi_areas(const std::vector<Vec3> &input) {
  const std::size_t n = input.size();
  if (n < 4)
    throw GeometryError("need at least four points for a spherical Voronoi diagram");
  std::vector<Vec3> p;
  p.reserve(n);
  for (const auto &v : input)
    p.push_back(normalized(v));

  // Hull faces by brute force; each face's outward normal is the Voronoi
  // vertex shared by its three points' cells.
  constexpr double eps = 1e-12;
  std::vector<std::vector<Vec3>> cell_vertices(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        Vec3 normal = cross(p[j] - p[i], p[k] - p[i]);
        const double len = norm(normal);
        if (len < 1e-14)
          continue;
        normal = normal * (1.0 / len);
        if (dot(normal, p[i]) < 0)
          normal = -normal;
        const double h = dot(normal, p[i]);
        bool face = true;
        for (std::size_t m = 0; m < n && face; ++m)
          if (m != i && m != j && m != k && dot(normal, p[m]) > h + eps)
            face = false;
        if (!face)
          continue;
        for (std::size_t idx : {i, j, k})
          cell_vertices[idx].push_back(normal);
      }

  std::vector<double> areas(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    auto &verts = cell_vertices[i];
    // Co-circular points produce repeated vertices; keep one copy.
    std::vector<Vec3> uniq;
    for (const auto &v : verts)
      if (std::none_of(uniq.begin(), uniq.end(),
                       [&](const Vec3 &u) { return distance(u, v) < 1e-9; }))
        uniq.push_back(v);
    if (uniq.size() < 3)
      throw GeometryError("degenerate spherical Voronoi cell");
    const Vec3 e1 = any_orthogonal(p[i]);
    const Vec3 e2 = cross(p[i], e1);
    std::sort(uniq.begin(), uniq.end(), [&](const Vec3 &a, const Vec3 &b) {
      return std::atan2(dot(a, e2), dot(a, e1)) < std::atan2(dot(b, e2), dot(b, e1));
    });
    for (std::size_t s = 0; s < uniq.size(); ++s)
      areas[i] += triangle_area(p[i], uniq[s], uniq[(s + 1) % uniq.size()]);
  }
  return areas;
}

DirectionSet make_direction_set(std::vector<Vec3> points) {
  DirectionSet ds;
  const auto areas = spherical_voronoi_areas(points);
  const double total = std::accumulate(areas.begin(), areas.end(), 0.0);
  ds.weights.reserve(areas.size());
  for (double a : areas)
    ds.weights.push_back(a / total);
  for (auto &v : points)
    v = normalized(v);
  ds.dirs = std::move(points);
  return ds;
}

DirectionSet build_direction_set(int count) { return make_direction_set(fibonacci_sphere(count)); }

} // namespace knotlab
