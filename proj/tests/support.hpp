#pragma once

// Shared fixtures and independent oracles for the unit and acceptance tests.

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "knotlab/diagram.hpp"
#include "knotlab/geometry.hpp"
#include "knotlab/knot_table.hpp"
#include "knotlab/laurent.hpp"
#include "knotlab/link_diagram.hpp"
#include "knotlab/rng.hpp"

namespace knotlab::testing {

/// Regular planar n-gon with unit edges in the z = 0 plane.
inline Polygon3 regular_polygon(int n) {
  const double r = 0.5 / std::sin(std::numbers::pi / n);
  std::vector<Vec3> v;
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * std::numbers::pi * i / n;
    v.push_back({r * std::cos(t), r * std::sin(t), 0.0});
  }
  return Polygon3(std::move(v));
}

/// Polygonal trefoil sampled from (sin t + 2 sin 2t, cos t - 2 cos 2t, -sin 3t).
inline Polygon3 trefoil_polygon(int samples = 24, double scale = 1.0, Vec3 offset = {}) {
  std::vector<Vec3> v;
  for (int i = 0; i < samples; ++i) {
    const double t = 2.0 * std::numbers::pi * i / samples;
    v.push_back(offset + scale * Vec3{std::sin(t) + 2.0 * std::sin(2.0 * t),
                                      std::cos(t) - 2.0 * std::cos(2.0 * t), -std::sin(3.0 * t)});
  }
  return Polygon3::from_vertices(std::move(v));
}

/// Connected sum of two polygons lying in disjoint half-spaces x < c < x':
/// the edge of `a` leaving its rightmost vertex and the edge of `b` leaving
/// its leftmost vertex are replaced by two bridges across the gap.
inline Polygon3 polygon_connected_sum(const Polygon3 &a, const Polygon3 &b) {
  auto extreme = [](const Polygon3 &p, double sign) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < p.size(); ++i)
      if (sign * p.vertex(i).x > sign * p.vertex(best).x)
        best = i;
    return best;
  };
  const std::size_t i = extreme(a, 1.0);
  const std::size_t j = extreme(b, -1.0);
  std::vector<Vec3> v;
  for (std::size_t t = 0; t <= i; ++t)
    v.push_back(a.vertex(t));
  for (std::size_t t = 1; t <= b.size(); ++t)
    v.push_back(b.vertex(j + t));
  for (std::size_t t = i + 1; t < a.size(); ++t)
    v.push_back(a.vertex(t));
  return Polygon3::from_vertices(std::move(v));
}

inline Polygon3 mirror_z(const Polygon3 &p) {
  std::vector<Vec3> v;
  for (const auto &x : p.vertices())
    v.push_back({x.x, x.y, -x.z});
  return Polygon3::from_vertices(std::move(v));
}

/// Random knot diagram with between 1 and max_crossings crossings, from a
/// projection of a random polygon in a cube.
inline LinkDiagram random_small_diagram(RngStream &rng, int max_crossings) {
  for (;;) {
    const int n = 6 + static_cast<int>(rng.below(5));
    std::vector<Vec3> v;
    for (int i = 0; i < n; ++i)
      v.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)});
    const auto poly = Polygon3::from_vertices(std::move(v));
    const auto d = project(poly, rng.unit_vector());
    if (!d)
      continue;
    const int c = static_cast<int>(d->crossings.size());
    if (c >= 1 && c <= max_crossings)
      return LinkDiagram::from_knot_diagram(*d);
  }
}

/// HOMFLYPT by the plain descending-diagram skein tree: walk components in
/// order from their first pass and resolve the first crossing met from
/// below. No memo, no simplification.
inline LaurentPoly2 naive_homfly(const LinkDiagram &d) {
  std::set<int> seen;
  for (const auto &comp : d.components) {
    for (int p : comp) {
      const int x = LinkDiagram::crossing_of(p);
      if (!seen.insert(x).second)
        continue;
      if (LinkDiagram::is_over(p))
        continue;
      const LaurentPoly2 switched = naive_homfly(d.switched(x));
      const LaurentPoly2 smoothed = naive_homfly(d.smoothed(x));
      if (d.signs[x] > 0) // P(L+) = a^-2 P(L-) + a^-1 z P(L0)
        return switched.times_monomial(1, -2, 0) + smoothed.times_monomial(1, -1, 1);
      // P(L-) = a^2 P(L+) - a z P(L0)
      return switched.times_monomial(1, 2, 0) + smoothed.times_monomial(-1, 1, 1);
    }
  }
  // Descending: an unlink of c components.
  const LaurentPoly2 delta =
      LaurentPoly2::monomial(1, 1, -1) - LaurentPoly2::monomial(1, -1, -1); // (a - a^-1) / z
  LaurentPoly2 out = LaurentPoly2::constant(1);
  for (int c = 1; c < d.num_components(); ++c)
    out = out * delta;
  return out;
}

/// name -> polynomial from a two-column TSV with '#' comments.
inline std::map<std::string, std::string> read_two_column_tsv(const std::string &path) {
  std::map<std::string, std::string> out;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#')
      continue;
    const auto tab = line.find('\t');
    out[line.substr(0, tab)] = line.substr(tab + 1);
  }
  return out;
}

struct PrimeRow {
  std::string name;
  int crossing_number = 0;
  std::string symmetry;
  PdCode pd;
};

inline std::vector<PrimeRow> read_prime_rows(const std::string &path) {
  std::vector<PrimeRow> rows;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#')
      continue;
    std::stringstream ss(line);
    PrimeRow r;
    std::string cn, pd;
    std::getline(ss, r.name, '\t');
    std::getline(ss, cn, '\t');
    std::getline(ss, r.symmetry, '\t');
    std::getline(ss, pd, '\t');
    r.crossing_number = std::stoi(cn);
    r.pd = parse_pd(pd);
    rows.push_back(std::move(r));
  }
  return rows;
}

inline std::string data_path(const std::string &name) {
  return std::string(KNOTLAB_DATA_DIR) + "/" + name;
}

inline std::string test_data_path(const std::string &name) {
  return std::string(KNOTLAB_TEST_DATA_DIR) + "/" + name;
}

} // namespace knotlab::testing
