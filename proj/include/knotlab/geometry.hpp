#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace knotlab {

/// Thrown when a geometric object violates its construction invariants.
struct GeometryError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3 &operator+=(const Vec3 &o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vec3 &operator-=(const Vec3 &o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Vec3 &operator*=(double s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }
  friend constexpr Vec3 operator+(Vec3 a, const Vec3 &b) { return a += b; }
  friend constexpr Vec3 operator-(Vec3 a, const Vec3 &b) { return a -= b; }
  friend constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
  friend constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
  friend constexpr Vec3 operator-(const Vec3 &a) { return {-a.x, -a.y, -a.z}; }
  friend constexpr bool operator==(const Vec3 &, const Vec3 &) = default;
};

constexpr double dot(const Vec3 &a, const Vec3 &b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}
constexpr Vec3 cross(const Vec3 &a, const Vec3 &b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3 &a) { return std::sqrt(dot(a, a)); }
inline double distance(const Vec3 &a, const Vec3 &b) { return norm(a - b); }
inline bool is_finite(const Vec3 &a) {
  return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}
/// Unit vector along `a`; throws on a zero or non-finite vector.
Vec3 normalized(const Vec3 &a);

/// Relative tolerance for edge lengths of arcs and polygons.
inline constexpr double kEdgeTolerance = 1e-9;

/// Open polygonal chain with k >= 1 unit edges (k + 1 vertices).
class OpenArc {
public:
  explicit OpenArc(std::vector<Vec3> vertices);

  std::size_t num_edges() const { return vertices_.size() - 1; }
  std::span<const Vec3> vertices() const { return vertices_; }
  const Vec3 &front() const { return vertices_.front(); }
  const Vec3 &back() const { return vertices_.back(); }

private:
  std::vector<Vec3> vertices_;
};

/// Closed polygon: vertices are cyclic, edge i joins vertex i to vertex i+1
/// (mod n). Edge lengths are recorded and validated against the vertices.
class Polygon3 {
public:
  /// Equilateral polygon; every edge must have unit length.
  explicit Polygon3(std::vector<Vec3> vertices);
  /// Polygon with prescribed edge lengths (mixed-length closures).
  Polygon3(std::vector<Vec3> vertices, std::vector<double> edge_lengths);

  /// Polygon whose edge lengths are taken from its own vertices. Used for
  /// simplified and ray-closed polygons where lengths are not prescribed.
  static Polygon3 from_vertices(std::vector<Vec3> vertices);

  std::size_t size() const { return vertices_.size(); }
  std::span<const Vec3> vertices() const { return vertices_; }
  std::span<const double> edge_lengths() const { return edge_lengths_; }
  const Vec3 &vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }

  /// Copy with one coordinate negated (orientation-reversing reflection).
  Polygon3 mirrored() const;

private:
  struct Unchecked {};
  Polygon3(Unchecked, std::vector<Vec3> vertices, std::vector<double> lengths)
      : vertices_(std::move(vertices)), edge_lengths_(std::move(lengths)) {}

  std::vector<Vec3> vertices_;
  std::vector<double> edge_lengths_;
};

/// Distance between the first and last vertex of the arc.
double end_to_end(const OpenArc &arc);

/// max over points p of w.p: height of the supporting plane with normal w.
double support_height(std::span<const Vec3> points, const Vec3 &w);

/// Rigid rotation of `points` by `angle` radians about the line through
/// `axis_point` with direction `axis_dir` (right-hand rule).
std::vector<Vec3> rotate_about_axis(std::span<const Vec3> points, const Vec3 &axis_point,
                                    const Vec3 &axis_dir, double angle);

/// Rotation of a single vector about an axis through the origin.
Vec3 rotate_vector(const Vec3 &v, const Vec3 &unit_axis, double angle);

/// Any unit vector orthogonal to the unit vector `w`.
Vec3 any_orthogonal(const Vec3 &w);

} // namespace knotlab
