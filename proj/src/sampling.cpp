#include "knotlab/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace knotlab {

MomentPolytope::MomentPolytope(std::vector<double> edge_lengths)
    : edge_lengths_(std::move(edge_lengths)) {
  if (edge_lengths_.size() < 3)
    throw EmptyPolytopeError("a closed polygon needs at least three edges");
  for (double e : edge_lengths_)
    if (!(e > 0.0) || !std::isfinite(e))
      throw EmptyPolytopeError("edge lengths must be positive and finite");
  const double total = std::accumulate(edge_lengths_.begin(), edge_lengths_.end(), 0.0);
  const double longest = *std::max_element(edge_lengths_.begin(), edge_lengths_.end());
  if (longest > total - longest + 1e-12)
    throw EmptyPolytopeError("edge lengths violate the polygon inequality");
}

namespace {

// Triangle inequalities for sides (a, e, b) with tolerance.
bool triangle_ok(double a, double e, double b, double tol) {
  return b <= a + e + tol && b >= a - e - tol && b >= e - a - tol;
}

} // namespace

bool MomentPolytope::contains(std::span<const double> d, double tol) const {
  const std::size_t n = edge_lengths_.size();
  if (d.size() != n - 3)
    return false;
  auto diag = [&](std::size_t i) {
    if (i == 0)
      return edge_lengths_[0];
    if (i == n - 2)
      return edge_lengths_[n - 1];
    return d[i - 1];
  };
  for (std::size_t i = 1; i <= n - 2; ++i)
    if (!triangle_ok(diag(i - 1), edge_lengths_[i], diag(i), tol))
      return false;
  return true;
}

namespace {

bool try_rejection_walk(std::span<const double> e, std::span<const double> reach,
                        std::vector<double> &out, RngStream &rng) {
  const std::size_t n = e.size();
  const std::size_t free = n - 3;
  const double d_end = e[n - 1];
  double prev = e[0];
  for (std::size_t i = 1; i <= free; ++i) {
    double d;
    if (i == 1) {
      const double lo = std::abs(prev - e[1]);
      d = rng.uniform(lo, prev + e[1]);
    } else {
      d = prev + e[i] * rng.uniform(-1.0, 1.0);
      if (d < e[i] - prev)
        return false;
    }
    // Necessary condition for the walk to finish at d_end.
    if (std::abs(d - d_end) > reach[i])
      return false;
    out[i - 1] = d;
    prev = d;
  }
  return triangle_ok(prev, e[n - 2], d_end, 0.0);
}

// Interval of d_i allowed by its two triangles, other diagonals fixed.
std::pair<double, double> coordinate_interval(std::span<const double> e,
                                              const std::vector<double> &d, std::size_t i) {
  const std::size_t n = e.size();
  auto diag = [&](std::size_t j) {
    if (j == 0)
      return e[0];
    if (j == n - 2)
      return e[n - 1];
    return d[j - 1];
  };
  const double left = diag(i - 1), right = diag(i + 1);
  double lo = std::max(std::abs(left - e[i]), std::abs(right - e[i + 1]));
  double hi = std::min(left + e[i], right + e[i + 1]);
  return {lo, hi};
}

std::vector<double> hit_and_run(std::span<const double> e, std::span<const double> reach,
                                RngStream &rng) {
  const std::size_t n = e.size();
  const std::size_t free = n - 3;
  const double d_end = e[n - 1];
  // Feasible start: walk taking the midpoint of each reachable interval.
  std::vector<double> d(free);
  double prev = e[0];
  for (std::size_t i = 1; i <= free; ++i) {
    double lo = std::max(std::abs(prev - e[i]), d_end - reach[i]);
    double hi = std::min(prev + e[i], d_end + reach[i]);
    if (i == free)
      lo = std::max(lo, e[n - 2] - d_end);
    if (lo > hi + 1e-12)
      throw EmptyPolytopeError("could not find a feasible starting point");
    d[i - 1] = 0.5 * (lo + hi);
    prev = d[i - 1];
  }
  const std::size_t steps = 100 * free + 100;
  for (std::size_t s = 0; s < steps; ++s) {
    const std::size_t i = 1 + rng.below(free);
    const auto [lo, hi] = coordinate_interval(e, d, i);
    if (hi > lo)
      d[i - 1] = rng.uniform(lo, hi);
  }
  return d;
}

} // namespace

std::vector<double> sample_polytope_uniform(const MomentPolytope &polytope, RngStream &rng,
                                            PolytopeMethod method,
                                            std::size_t max_rejection_trials) {
  const auto e = polytope.edge_lengths();
  const std::size_t n = e.size();
  const std::size_t free = n - 3;
  if (free == 0)
    return {};
  // reach[i] = total middle-edge length of the triangles after diagonal i.
  std::vector<double> reach(n - 1, 0.0);
  for (std::size_t i = n - 2; i-- > 0;)
    reach[i] = reach[i + 1] + e[i + 1];

  if (method == PolytopeMethod::rejection) {
    std::vector<double> out(free);
    for (std::size_t t = 0; t < max_rejection_trials; ++t)
      if (try_rejection_walk(e, reach, out, rng))
        return out;
  }
  return hit_and_run(e, reach, rng);
}

Polygon3 polygon_from_action_angle(const ActionAngleCoords &coords,
                                   std::span<const double> edge_lengths) {
  const std::size_t n = edge_lengths.size();
  if (n < 3)
    throw GeometryError("a closed polygon needs at least three edges");
  if (coords.diagonals.size() != n - 3 || coords.dihedrals.size() != n - 3)
    throw GeometryError("action-angle coordinates have the wrong dimension");
  MomentPolytope polytope({edge_lengths.begin(), edge_lengths.end()});
  if (!polytope.contains(coords.diagonals))
    throw GeometryError("diagonals violate the moment polytope inequalities");

  std::vector<double> d(n - 1);
  d[0] = edge_lengths[0];
  for (std::size_t i = 1; i + 1 < n - 1; ++i)
    d[i] = coords.diagonals[i - 1];
  d[n - 2] = edge_lengths[n - 1];

  auto cos_at_hub = [&](double a, double b, double e) {
    if (a <= 0.0 || b <= 0.0)
      return 1.0;
    return std::clamp((a * a + b * b - e * e) / (2.0 * a * b), -1.0, 1.0);
  };

  std::vector<Vec3> v(n);
  v[0] = {0, 0, 0};
  v[1] = {d[0], 0, 0};
  {
    const double c = cos_at_hub(d[0], d[1], edge_lengths[1]);
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    v[2] = Vec3{c, s, 0} * d[1];
  }
  for (std::size_t i = 2; i + 1 < n; ++i) {
    // Triangle (v0, v_i, v_{i+1}) hinged on diagonal v0 -> v_i.
    // Normalise by the realised length so rounding errors do not compound
    // along the fan.
    const double di = d[i - 1];
    const double vn = norm(v[i]);
    const Vec3 u = vn > 0.0 ? v[i] * (1.0 / vn) : Vec3{1, 0, 0};
    Vec3 p = v[i - 1] - u * dot(v[i - 1], u);
    const double pn = norm(p);
    const Vec3 ph = pn > 1e-14 ? p * (1.0 / pn) : any_orthogonal(u);
    const double theta = coords.dihedrals[i - 2];
    Vec3 r = rotate_vector(-ph, u, theta);
    r = r - u * dot(r, u);
    r = r * (1.0 / norm(r));
    const double c = cos_at_hub(di, d[i], edge_lengths[i]);
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    v[i + 1] = (u * c + r * s) * d[i];
  }
  return Polygon3(std::move(v), {edge_lengths.begin(), edge_lengths.end()});
}

ActionAngleCoords measure_action_angle(const Polygon3 &polygon) {
  const std::size_t n = polygon.size();
  ActionAngleCoords out;
  if (n < 4)
    return out;
  const auto v = polygon.vertices();
  const Vec3 hub = v[0];
  for (std::size_t i = 2; i + 1 < n; ++i)
    out.diagonals.push_back(distance(v[i], hub));
  for (std::size_t i = 2; i + 1 < n; ++i) {
    const Vec3 u = normalized(v[i] - hub);
    const Vec3 p = (v[i - 1] - hub) - u * dot(v[i - 1] - hub, u);
    const Vec3 q = (v[i + 1] - hub) - u * dot(v[i + 1] - hub, u);
    const Vec3 ref = -normalized(p);
    const Vec3 ref90 = cross(u, ref);
    double theta = std::atan2(dot(q, ref90), dot(q, ref));
    if (theta < 0)
      theta += 2.0 * std::numbers::pi;
    out.dihedrals.push_back(theta);
  }
  return out;
}

OpenArc sample_open_arc(int k, RngStream &rng) {
  if (k < 1)
    throw GeometryError("an open arc needs at least one edge");
  std::vector<Vec3> v;
  v.reserve(k + 1);
  v.push_back({0, 0, 0});
  for (int i = 0; i < k; ++i)
    v.push_back(v.back() + rng.unit_vector());
  return OpenArc(std::move(v));
}

namespace {

Polygon3 sample_with_edges(std::vector<double> edges, RngStream &rng) {
  const std::size_t n = edges.size();
  MomentPolytope polytope(edges);
  ActionAngleCoords coords;
  coords.diagonals = sample_polytope_uniform(polytope, rng);
  coords.dihedrals.resize(n - 3);
  for (auto &t : coords.dihedrals)
    t = rng.angle();
  return polygon_from_action_angle(coords, edges);
}

} // namespace

Polygon3 sample_closed_equilateral(int n, RngStream &rng) {
  if (n < 3)
    throw GeometryError("a closed polygon needs at least three edges");
  return sample_with_edges(std::vector<double>(n, 1.0), rng);
}

OpenArc sample_closure_arc(int m, double ell, RngStream &rng) {
  if (m < 1)
    throw InfeasibleClosureError("a closure arc needs at least one edge");
  if (!(ell >= 0.0) || ell > m + 1e-12)
    throw InfeasibleClosureError("end-to-end distance exceeds the closure arc length");
  if (m == 1) {
    if (std::abs(ell - 1.0) > kEdgeTolerance)
      throw InfeasibleClosureError("a single edge spans exactly unit distance");
    return OpenArc({{0, 0, 0}, {1, 0, 0}});
  }
  if (ell <= 1e-12)
    throw InfeasibleClosureError("end-to-end distance is zero; the arc is already closed");
  std::vector<double> edges(m + 1, 1.0);
  edges[0] = std::min(ell, static_cast<double>(m));
  const Polygon3 p = sample_with_edges(std::move(edges), rng);
  const auto v = p.vertices();
  std::vector<Vec3> arc(v.begin() + 1, v.end());
  arc.push_back(v[0]);
  return OpenArc(std::move(arc));
}

namespace {

// Rotation taking unit vector `from` to unit vector `to`.
Vec3 align(const Vec3 &x, const Vec3 &from, const Vec3 &to) {
  const Vec3 c = cross(from, to);
  const double s = norm(c);
  const double cosang = dot(from, to);
  if (s < 1e-15) {
    if (cosang > 0)
      return x;
    return rotate_vector(x, any_orthogonal(from), std::numbers::pi);
  }
  return rotate_vector(x, c * (1.0 / s), std::atan2(s, cosang));
}

} // namespace

Polygon3 glue_closure(const OpenArc &a, const OpenArc &b, double angle) {
  const std::size_t k = a.num_edges();
  const std::size_t m = b.num_edges();
  if (k + m < 3)
    throw GeometryError("gluing two single edges gives a doubled, degenerate polygon");
  const double la = end_to_end(a);
  const double lb = end_to_end(b);
  if (std::abs(la - lb) > 1e-6)
    throw GeometryError("arc end-to-end distances do not match");
  if (la < 1e-12)
    throw GeometryError("arc is already closed; no axis to glue along");

  const Vec3 start = a.back();
  const Vec3 axis = normalized(a.front() - a.back());
  const Vec3 src = normalized(b.back() - b.front());
  const auto av = a.vertices();
  const auto bv = b.vertices();
  std::vector<Vec3> verts(av.begin(), av.end());
  for (std::size_t j = 1; j < m; ++j) {
    const Vec3 aligned = align(bv[j] - bv[0], src, axis);
    verts.push_back(start + rotate_vector(aligned, axis, angle));
  }
  std::vector<double> lengths(verts.size(), 1.0);
  const double last = distance(verts.back(), verts.front());
  if (std::abs(last - 1.0) > kEdgeTolerance)
    lengths.back() = last;
  return Polygon3(std::move(verts), std::move(lengths));
}

Polygon3 glue_closure(const OpenArc &a, const OpenArc &b, RngStream &rng) {
  return glue_closure(a, b, rng.angle());
}

} // namespace knotlab
