#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "knotlab/geometry.hpp"
#include "knotlab/rng.hpp"

namespace knotlab {

struct EmptyPolytopeError : std::domain_error {
  using std::domain_error::domain_error;
};
struct InfeasibleClosureError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Moment polytope of the fan triangulation rooted at vertex 0 for a closed
/// polygon with the given edge lengths e_0..e_{n-1}.
///
/// Coordinates are the n-3 fan diagonals d_i = |v_{i+1} - v_0|. With
/// d_0 = e_0 and d_{n-2} = e_{n-1}, triangle i (1 <= i <= n-2) has sides
/// (d_{i-1}, e_i, d_i) and must satisfy the triangle inequalities.
class MomentPolytope {
public:
  /// Throws EmptyPolytopeError when the longest edge exceeds the sum of
  /// the others.
  explicit MomentPolytope(std::vector<double> edge_lengths);

  std::size_t num_edges() const { return edge_lengths_.size(); }
  std::size_t dimension() const { return edge_lengths_.size() - 3; }
  std::span<const double> edge_lengths() const { return edge_lengths_; }

  /// Membership test; points within `tol` of a face count as inside.
  bool contains(std::span<const double> diagonals, double tol = 1e-12) const;

private:
  std::vector<double> edge_lengths_;
};

/// Fan diagonals plus dihedral angles about each diagonal.
struct ActionAngleCoords {
  std::vector<double> diagonals;
  std::vector<double> dihedrals;
};

enum class PolytopeMethod {
  /// Exact rejection sampling of the diagonal walk (default).
  rejection,
  /// Coordinate hit-and-run started from a feasible interior point.
  hit_and_run,
};

/// Uniform (Lebesgue) point of the polytope.
///
/// The rejection sampler draws d_1 uniformly from its exact interval
/// [|d_0 - e_1|, d_0 + e_1] and every later diagonal as d_{i-1} + e_i * U(-1,1);
/// the proposal density is constant, so accepted walks are uniform. If the
/// acceptance rate is so low that `max_rejection_trials` walks fail, the
/// sampler falls back to hit-and-run.
std::vector<double> sample_polytope_uniform(const MomentPolytope &polytope, RngStream &rng,
                                            PolytopeMethod method = PolytopeMethod::rejection,
                                            std::size_t max_rejection_trials = 2'000'000);

/// Builds the polygon with the given fan diagonals and dihedrals.
/// Dihedral 0 places consecutive triangles flat on opposite sides of their
/// shared diagonal. Throws GeometryError when the diagonals are infeasible.
Polygon3 polygon_from_action_angle(const ActionAngleCoords &coords,
                                   std::span<const double> edge_lengths);

/// Inverse of polygon_from_action_angle: reads off diagonals and dihedrals.
ActionAngleCoords measure_action_angle(const Polygon3 &polygon);

/// k independent uniform unit steps starting at the origin.
OpenArc sample_open_arc(int k, RngStream &rng);

/// Uniform closed equilateral n-gon (Hausdorff measure on closed polygons).
Polygon3 sample_closed_equilateral(int n, RngStream &rng);

/// m-edge unit arc conditioned on end-to-end distance `ell`, sampled as the
/// closed (m+1)-gon with edge lengths (ell, 1, ..., 1) minus its ell edge.
OpenArc sample_closure_arc(int m, double ell, RngStream &rng);

/// Closes `a` with `b`: b is placed running from a's last vertex back to a's
/// first vertex, then spun by `angle` about the line through a's endpoints.
/// The result lists a's vertices verbatim followed by b's interior vertices.
Polygon3 glue_closure(const OpenArc &a, const OpenArc &b, double angle);

/// As above with a uniformly random spin angle.
Polygon3 glue_closure(const OpenArc &a, const OpenArc &b, RngStream &rng);

} // namespace knotlab
