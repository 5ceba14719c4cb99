#pragma once

#include <vector>

#include "knotlab/geometry.hpp"

namespace knotlab {

/// Fixed unit directions with spherical Voronoi cell weights summing to 1.
struct DirectionSet {
  std::vector<Vec3> dirs;
  std::vector<double> weights;

  std::size_t size() const { return dirs.size(); }
};

/// Spherical Fibonacci lattice of `count` points.
std::vector<Vec3> fibonacci_sphere(int count);

/// Area of each point's spherical Voronoi cell on the unit sphere, computed
/// exactly from the convex hull of the points (Delaunay triangulation).
/// Requires at least four points not all on one hemisphere boundary.
std::vector<double> spherical_voronoi_areas(const std::vector<Vec3> &points);

/// Direction set over the given points, weights = relative cell areas.
DirectionSet make_direction_set(std::vector<Vec3> points);

/// The standard 100-direction set (Fibonacci lattice).
DirectionSet build_direction_set(int count = 100);

} // namespace knotlab
