#include "knotlab/diagram.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace knotlab {

std::vector<CrossingVisit> KnotDiagram::gauss_code() const {
  struct Pass {
    int edge;
    double param;
    CrossingVisit visit;
  };
  std::vector<Pass> passes;
  passes.reserve(2 * crossings.size());
  for (std::size_t c = 0; c < crossings.size(); ++c) {
    const auto &x = crossings[c];
    passes.push_back({x.over_edge, x.over_param, {static_cast<int>(c), true}});
    passes.push_back({x.under_edge, x.under_param, {static_cast<int>(c), false}});
  }
  std::sort(passes.begin(), passes.end(), [](const Pass &a, const Pass &b) {
    return a.edge != b.edge ? a.edge < b.edge : a.param < b.param;
  });
  std::vector<CrossingVisit> out;
  out.reserve(passes.size());
  for (const auto &p : passes)
    out.push_back(p.visit);
  return out;
}

namespace {

struct Point2 {
  double x, y;
};

double cross2(double ax, double ay, double bx, double by) { return ax * by - ay * bx; }

} // namespace

std::optional<KnotDiagram> project(const Polygon3 &polygon, const Vec3 &dir) {
  const Vec3 w = normalized(dir);
  const Vec3 u = any_orthogonal(w);
  const Vec3 v = cross(w, u);
  const auto verts = polygon.vertices();
  const int n = static_cast<int>(verts.size());
  constexpr double tol = kGenericityTolerance;

  std::vector<Point2> p(n);
  std::vector<double> h(n);
  for (int i = 0; i < n; ++i) {
    p[i] = {dot(verts[i], u), dot(verts[i], v)};
    h[i] = dot(verts[i], w);
  }
  for (int i = 0; i < n; ++i) {
    const Vec3 e = verts[(i + 1) % n] - verts[i];
    if (norm(cross(e, w)) < tol * norm(e))
      return std::nullopt;
  }

  struct Box {
    double x0, x1, y0, y1;
  };
  std::vector<Box> box(n);
  for (int i = 0; i < n; ++i) {
    const auto &a = p[i];
    const auto &b = p[(i + 1) % n];
    box[i] = {std::min(a.x, b.x) - tol, std::max(a.x, b.x) + tol, std::min(a.y, b.y) - tol,
              std::max(a.y, b.y) + tol};
  }

  KnotDiagram d;
  d.n_edges = n;
  d.projection_dir = w;
  std::vector<Point2> where;
  for (int i = 0; i < n; ++i) {
    const int i1 = (i + 1) % n;
    const double rx = p[i1].x - p[i].x, ry = p[i1].y - p[i].y;
    for (int j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1)
        continue;
      if (box[i].x1 < box[j].x0 || box[j].x1 < box[i].x0 || box[i].y1 < box[j].y0 ||
          box[j].y1 < box[i].y0)
        continue;
      const int j1 = (j + 1) % n;
      const double qx = p[j1].x - p[j].x, qy = p[j1].y - p[j].y;
      const double wx = p[j].x - p[i].x, wy = p[j].y - p[i].y;
      const double denom = cross2(rx, ry, qx, qy);
      const double scale = std::sqrt((rx * rx + ry * ry) * (qx * qx + qy * qy));
      if (std::abs(denom) <= tol * scale) {
        // Parallel: degenerate only if the segments are collinear and touch.
        if (std::abs(cross2(wx, wy, rx, ry)) <= tol * std::sqrt(rx * rx + ry * ry))
          return std::nullopt;
        continue;
      }
      const double s = cross2(wx, wy, qx, qy) / denom;
      const double t = cross2(wx, wy, rx, ry) / denom;
      if (s < -tol || s > 1 + tol || t < -tol || t > 1 + tol)
        continue;
      if (s < tol || s > 1 - tol || t < tol || t > 1 - tol)
        return std::nullopt;
      const double hi = h[i] + s * (h[i1] - h[i]);
      const double hj = h[j] + t * (h[j1] - h[j]);
      if (std::abs(hi - hj) < tol)
        return std::nullopt;
      Crossing c;
      const bool i_over = hi > hj;
      c.over_edge = i_over ? i : j;
      c.under_edge = i_over ? j : i;
      c.over_param = i_over ? s : t;
      c.under_param = i_over ? t : s;
      const double ox = i_over ? rx : qx, oy = i_over ? ry : qy;
      const double ux = i_over ? qx : rx, uy = i_over ? qy : ry;
      c.sign = cross2(ox, oy, ux, uy) > 0 ? 1 : -1;
      d.crossings.push_back(c);
      where.push_back({p[i].x + s * rx, p[i].y + s * ry});
    }
  }
  for (std::size_t a = 0; a < where.size(); ++a)
    for (std::size_t b = a + 1; b < where.size(); ++b)
      if (std::hypot(where[a].x - where[b].x, where[a].y - where[b].y) < tol)
        return std::nullopt;

  // Reorder crossings by first encounter along the traversal.
  const auto code = d.gauss_code();
  std::vector<int> order;
  std::vector<char> seen(d.crossings.size(), 0);
  for (const auto &visit : code)
    if (!seen[visit.crossing]) {
      seen[visit.crossing] = 1;
      order.push_back(visit.crossing);
    }
  std::vector<Crossing> sorted;
  sorted.reserve(order.size());
  for (int c : order)
    sorted.push_back(d.crossings[c]);
  d.crossings = std::move(sorted);
  return d;
}

GenericProjection generic_project(const Polygon3 &polygon, RngStream &rng, int max_attempts) {
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    if (auto d = project(polygon, rng.unit_vector()))
      return {std::move(*d), attempt};
  }
  throw ProjectionError("no generic projection direction found after " +
                        std::to_string(max_attempts) + " attempts");
}

namespace {

// Conservative test: does the closed segment [p, q] meet the closed
// triangle (a, b, c)? Coplanar configurations count as meeting.
bool segment_hits_triangle(const Vec3 &p, const Vec3 &q, const Vec3 &a, const Vec3 &b,
                           const Vec3 &c) {
  constexpr double eps = 1e-12;
  const Vec3 nrm = cross(b - a, c - a);
  const double area2 = norm(nrm);
  if (area2 < eps) {
    // Degenerate triangle: treat as blocked only if the segment passes
    // within eps of it; this is measure zero for random input.
    return false;
  }
  const double dp = dot(nrm, p - a) / area2;
  const double dq = dot(nrm, q - a) / area2;
  if ((dp > eps && dq > eps) || (dp < -eps && dq < -eps))
    return false;
  if (std::abs(dp) <= eps && std::abs(dq) <= eps)
    return true; // coplanar: be conservative
  const double t = dp / (dp - dq);
  const Vec3 x = p + (q - p) * t;
  // Barycentric inside test with a small outward margin.
  const double wa = dot(cross(b - x, c - x), nrm) / (area2 * area2);
  const double wb = dot(cross(c - x, a - x), nrm) / (area2 * area2);
  const double wc = 1.0 - wa - wb;
  return wa >= -eps && wb >= -eps && wc >= -eps;
}

// Segment sharing endpoint `shared` with the triangle: it meets the triangle
// elsewhere only when it lies (nearly) in the triangle's plane.
bool adjacent_segment_blocks(const Vec3 &shared, const Vec3 &other, const Vec3 &a,
                             const Vec3 &b, const Vec3 &c) {
  const Vec3 nrm = cross(b - a, c - a);
  const double area2 = norm(nrm);
  if (area2 < 1e-12)
    return false;
  const double dist = std::abs(dot(nrm, other - shared)) / area2;
  return dist <= 1e-12 * std::max(1.0, distance(other, shared));
}

} // namespace

Polygon3 kmt_simplify(const Polygon3 &polygon) {
  std::vector<Vec3> v(polygon.vertices().begin(), polygon.vertices().end());
  // Per-edge bounding boxes are recomputed lazily from vertices; n is small.
  std::size_t failures = 0;
  std::size_t i = 0;
  while (v.size() > 3 && failures < v.size()) {
    const std::size_t n = v.size();
    i %= n;
    const std::size_t ip = (i + n - 1) % n;
    const std::size_t in = (i + 1) % n;
    const Vec3 &a = v[ip], &b = v[i], &c = v[in];
    const double x0 = std::min({a.x, b.x, c.x}), x1 = std::max({a.x, b.x, c.x});
    const double y0 = std::min({a.y, b.y, c.y}), y1 = std::max({a.y, b.y, c.y});
    const double z0 = std::min({a.z, b.z, c.z}), z1 = std::max({a.z, b.z, c.z});
    bool blocked = distance(a, c) < 1e-12;
    for (std::size_t e = 0; e < n && !blocked; ++e) {
      const std::size_t e1 = (e + 1) % n;
      if (e == ip || e == i)
        continue;
      const Vec3 &p = v[e], &q = v[e1];
      if (std::max(p.x, q.x) < x0 || std::min(p.x, q.x) > x1 || std::max(p.y, q.y) < y0 ||
          std::min(p.y, q.y) > y1 || std::max(p.z, q.z) < z0 || std::min(p.z, q.z) > z1)
        continue;
      if (e1 == ip)
        blocked = adjacent_segment_blocks(a, p, a, b, c);
      else if (e == in)
        blocked = adjacent_segment_blocks(c, q, a, b, c);
      else
        blocked = segment_hits_triangle(p, q, a, b, c);
    }
    if (blocked) {
      ++failures;
      ++i;
    } else {
      v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
      failures = 0;
    }
  }
  return Polygon3::from_vertices(std::move(v));
}

int writhe(const KnotDiagram &diagram) {
  int w = 0;
  for (const auto &c : diagram.crossings)
    w += c.sign;
  return w;
}

std::string diagram_to_json(const KnotDiagram &diagram) {
  nlohmann::json j;
  j["n_edges"] = diagram.n_edges;
  j["projection_dir"] = {diagram.projection_dir.x, diagram.projection_dir.y,
                         diagram.projection_dir.z};
  j["writhe"] = writhe(diagram);
  auto &list = j["crossings"] = nlohmann::json::array();
  for (const auto &c : diagram.crossings)
    list.push_back({{"over_edge", c.over_edge},
                    {"under_edge", c.under_edge},
                    {"over_param", c.over_param},
                    {"under_param", c.under_param},
                    {"sign", c.sign}});
  return j.dump();
}

} // namespace knotlab
