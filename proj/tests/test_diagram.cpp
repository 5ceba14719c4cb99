#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <map>
#include <vector>

#include "knotlab/diagram.hpp"
#include "knotlab/homfly.hpp"
#include "knotlab/link_diagram.hpp"
#include "knotlab/planar_moves.hpp"
#include "knotlab/sampling.hpp"
#include "support.hpp"

using namespace knotlab;
using namespace knotlab::testing;

TEST_CASE("projection of planar and degenerate polygons") {
  const auto hex = regular_polygon(6);
  const auto d = project(hex, {0, 0, 1});
  REQUIRE(d);
  CHECK(d->crossings.empty());
  CHECK(writhe(*d) == 0);
  // Direction parallel to the first edge.
  const Vec3 edge = normalized(hex.vertex(1) - hex.vertex(0));
  CHECK_FALSE(project(hex, edge));

  RngStream rng(21, 0);
  const auto tri = regular_polygon(3);
  const auto gp = generic_project(tri, rng);
  CHECK(gp.diagram.crossings.empty());
  CHECK(gp.attempts >= 1);
}

TEST_CASE("generic_project on a collapsed polygon fails") {
  // A doubled segment: every direction is degenerate.
  const auto flat = Polygon3::from_vertices({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {1, 0, 0}});
  RngStream rng(22, 0);
  CHECK_THROWS_AS(generic_project(flat, rng, 50), ProjectionError);
}

TEST_CASE("generic_project needs few attempts and is deterministic") {
  RngStream rng(23, 0);
  int worst = 0;
  for (int t = 0; t < 10000; ++t) {
    const auto p = sample_closed_equilateral(100, rng);
    worst = std::max(worst, generic_project(p, rng).attempts);
  }
  CHECK(worst <= 10);

  const auto p = sample_closed_equilateral(100, rng);
  RngStream r1(5, 6), r2(5, 6);
  const auto d1 = generic_project(p, r1).diagram;
  const auto d2 = generic_project(p, r2).diagram;
  REQUIRE(d1.crossings.size() == d2.crossings.size());
  for (std::size_t i = 0; i < d1.crossings.size(); ++i) {
    CHECK(d1.crossings[i].over_edge == d2.crossings[i].over_edge);
    CHECK(d1.crossings[i].under_param == d2.crossings[i].under_param);
  }
}

TEST_CASE("every crossing is passed once over and once under") {
  RngStream rng(24, 0);
  for (int t = 0; t < 200; ++t) {
    const auto d = generic_project(sample_closed_equilateral(60, rng), rng).diagram;
    std::map<int, std::pair<int, int>> passes;
    for (const auto &v : d.gauss_code())
      (v.over ? passes[v.crossing].first : passes[v.crossing].second)++;
    CHECK(passes.size() == d.crossings.size());
    for (const auto &[c, p] : passes) {
      CHECK(p.first == 1);
      CHECK(p.second == 1);
    }
    for (const auto &c : d.crossings) {
      CHECK(c.over_edge != c.under_edge);
      CHECK(std::abs(c.over_edge - c.under_edge) != 1);
      CHECK(c.over_param > 0.0);
      CHECK(c.over_param < 1.0);
      CHECK(c.under_param > 0.0);
      CHECK(c.under_param < 1.0);
    }
  }
}

TEST_CASE("trefoil diagram has writhe +-3 once reduced") {
  const auto tre = trefoil_polygon();
  RngStream rng(25, 0);
  for (int t = 0; t < 20; ++t) {
    const auto d = generic_project(tre, rng).diagram;
    CHECK(d.crossings.size() >= 3);
    auto ld = LinkDiagram::from_knot_diagram(d);
    CHECK(ld.writhe() == writhe(d));
    simplify_diagram(ld);
    CHECK(ld.num_crossings() == 3);
    CHECK(std::abs(ld.writhe()) == 3);
  }
}

TEST_CASE("mirroring the polygon flips every crossing sign") {
  RngStream rng(26, 0);
  for (int t = 0; t < 50; ++t) {
    const auto p = sample_closed_equilateral(50, rng);
    const Vec3 dir{0, 0, 1};
    const auto d = project(p, dir);
    const auto m = project(mirror_z(p), dir);
    if (!d || !m)
      continue;
    REQUIRE(d->crossings.size() == m->crossings.size());
    for (std::size_t i = 0; i < d->crossings.size(); ++i) {
      CHECK(m->crossings[i].sign == -d->crossings[i].sign);
      CHECK(m->crossings[i].over_edge == d->crossings[i].under_edge);
    }
    CHECK(writhe(*m) == -writhe(*d));
    // Any coordinate reflection maps the z axis to itself up to sign.
    if (const auto gm = project(p.mirrored(), dir))
      CHECK(writhe(*gm) == -writhe(*d));
  }
}

TEST_CASE("kmt_simplify") {
  SUBCASE("convex polygons collapse to a triangle") {
    // Lifted off the plane: coplanar contact counts as blocking.
    for (int n : {3, 4, 10, 57}) {
      const auto flat = regular_polygon(n);
      std::vector<Vec3> v(flat.vertices().begin(), flat.vertices().end());
      for (std::size_t i = 0; i < v.size(); ++i)
        v[i].z = 0.01 * std::sin(1.7 * static_cast<double>(i * i));
      CHECK(kmt_simplify(Polygon3::from_vertices(v)).size() == 3);
    }
    CHECK(kmt_simplify(regular_polygon(12)).size() == 12);
  }
  SUBCASE("a trefoil keeps at least six sticks") {
    const auto s = kmt_simplify(trefoil_polygon(60));
    CHECK(s.size() >= 6);
    CHECK(s.size() <= 60);
  }
  SUBCASE("simplification preserves the polynomial") {
    RngStream rng(27, 0);
    HomflyEngine engine;
    for (int t = 0; t < 100; ++t) {
      const auto p = sample_closed_equilateral(100, rng);
      const auto s = kmt_simplify(p);
      CHECK(s.size() <= p.size());
      const auto before = engine.compute(LinkDiagram::from_knot_diagram(
          generic_project(p, rng).diagram));
      const auto after = engine.compute(LinkDiagram::from_knot_diagram(
          generic_project(s, rng).diagram));
      REQUIRE(before);
      REQUIRE(after);
      CHECK(*before == *after);
    }
  }
}

TEST_CASE("diagram JSON dump lists crossings") {
  const auto d = project(trefoil_polygon(), normalized({0.1, 0.2, 1.0}));
  REQUIRE(d);
  const auto json = diagram_to_json(*d);
  CHECK(json.find("\"crossings\"") != std::string::npos);
  CHECK(json.find("\"over_edge\"") != std::string::npos);
}
