#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "knotlab/geometry.hpp"
#include "knotlab/rng.hpp"

namespace knotlab {

struct Crossing {
  int over_edge = 0;
  int under_edge = 0;
  double over_param = 0.0;  ///< position along the over edge, in (0, 1)
  double under_param = 0.0; ///< position along the under edge, in (0, 1)
  int sign = 0;             ///< +1 right-handed, -1 left-handed
};

/// One pass through a crossing while traversing the knot.
struct CrossingVisit {
  int crossing = 0;
  bool over = false;
};

/// Crossing diagram of a closed polygon under orthogonal projection.
struct KnotDiagram {
  int n_edges = 0;
  /// Ordered by first encounter when traversing from vertex 0.
  std::vector<Crossing> crossings;
  Vec3 projection_dir;

  /// Every crossing pass in traversal order (each crossing appears twice).
  std::vector<CrossingVisit> gauss_code() const;
};

/// Thrown when no generic projection direction is found.
struct ProjectionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Tolerance used to reject non-generic projections.
inline constexpr double kGenericityTolerance = 1e-9;

/// Orthogonal projection along the unit vector `dir`. Returns nullopt
/// (degenerate) when an edge is nearly parallel to `dir`, an intersection
/// lies within tolerance of an edge endpoint, two edges overlap, two
/// crossings coincide, or two strands meet in space.
std::optional<KnotDiagram> project(const Polygon3 &polygon, const Vec3 &dir);

struct GenericProjection {
  KnotDiagram diagram;
  int attempts = 0;
};

/// Retries project() with fresh uniform directions until one is generic.
/// Throws ProjectionError after `max_attempts` degenerate directions.
GenericProjection generic_project(const Polygon3 &polygon, RngStream &rng,
                                  int max_attempts = 1000);

/// Removes vertices whose triangle (v_{i-1}, v_i, v_{i+1}) meets no other
/// edge, sweeping cyclically until a full pass removes nothing. Preserves
/// knot type; never returns fewer than three vertices.
Polygon3 kmt_simplify(const Polygon3 &polygon);

int writhe(const KnotDiagram &diagram);

/// JSON dump of the crossing list for debugging.
std::string diagram_to_json(const KnotDiagram &diagram);

} // namespace knotlab
