#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "knotlab/homfly.hpp"
#include "knotlab/knot_table.hpp"
#include "knotlab/sampling.hpp"

using namespace knotlab;

namespace {

double mean_of(int count, auto draw) {
  double s = 0.0;
  for (int i = 0; i < count; ++i)
    s += draw();
  return s / count;
}

/// Mean of d1^2 over the n = 5 equilateral polytope
/// {0 <= d1, d2 <= 2, |d1 - d2| <= 1 <= d1 + d2} by the midpoint rule.
double pentagon_mean_d1_squared() {
  const int m = 2000;
  const double h = 2.0 / m;
  double mass = 0.0, moment = 0.0;
  for (int i = 0; i < m; ++i) {
    const double d1 = (i + 0.5) * h;
    for (int j = 0; j < m; ++j) {
      const double d2 = (j + 0.5) * h;
      if (std::abs(d1 - d2) <= 1.0 && d1 + d2 >= 1.0) {
        mass += 1.0;
        moment += d1 * d1;
      }
    }
  }
  return moment / mass;
}

double bend_angle(const OpenArc &arc) {
  // Turning angle between consecutive edge vectors.
  const auto v = arc.vertices();
  const Vec3 a = v[1] - v[0];
  const Vec3 b = v[2] - v[1];
  return std::acos(std::clamp(dot(a, b) / (norm(a) * norm(b)), -1.0, 1.0));
}

} // namespace

TEST_CASE("open arc moments match the random-flight oracle") {
  RngStream rng(11, 0);
  CHECK(end_to_end(sample_open_arc(1, rng)) == doctest::Approx(1.0));
  const double m2 = mean_of(100000, [&] {
    const double l = end_to_end(sample_open_arc(2, rng));
    return l * l;
  });
  CHECK(std::abs(m2 - 2.0) < 0.02);
  const double m50 = mean_of(100000, [&] {
    const double l = end_to_end(sample_open_arc(50, rng));
    return l * l;
  });
  CHECK(std::abs(m50 - 50.0) < 0.7);
}

TEST_CASE("polytope sampler: quadrilateral diagonal is uniform on [0, 2]") {
  const MomentPolytope pt({1, 1, 1, 1});
  CHECK(pt.dimension() == 1);
  for (auto method : {PolytopeMethod::rejection, PolytopeMethod::hit_and_run}) {
    RngStream rng(12, static_cast<std::uint64_t>(method));
    double s1 = 0.0, s2 = 0.0;
    const int count = 100000;
    for (int i = 0; i < count; ++i) {
      const double d = sample_polytope_uniform(pt, rng, method)[0];
      s1 += d;
      s2 += d * d;
    }
    CHECK(std::abs(s1 / count - 1.0) < 0.01);
    CHECK(std::abs(s2 / count - 4.0 / 3.0) < 0.01);
  }
}

TEST_CASE("polytope sampler: pentagon moment matches numeric integration") {
  const double oracle = pentagon_mean_d1_squared();
  CHECK(oracle == doctest::Approx(1.5).epsilon(1e-3));
  const MomentPolytope pt({1, 1, 1, 1, 1});
  for (auto method : {PolytopeMethod::rejection, PolytopeMethod::hit_and_run}) {
    RngStream rng(13, static_cast<std::uint64_t>(method));
    const double m = mean_of(100000, [&] {
      const auto d = sample_polytope_uniform(pt, rng, method);
      REQUIRE(pt.contains(d));
      return d[0] * d[0];
    });
    CHECK(std::abs(m - oracle) < 0.02);
  }
}

TEST_CASE("empty polytope is an error") {
  CHECK_THROWS_AS(MomentPolytope({1, 1, 3}), EmptyPolytopeError);
  CHECK_THROWS_AS(MomentPolytope({1, 1, 1, 4}), EmptyPolytopeError);
  CHECK_NOTHROW(MomentPolytope({1, 1, 2}));
}

TEST_CASE("action-angle construction") {
  SUBCASE("triangle") {
    const auto p = polygon_from_action_angle({}, std::vector<double>{1, 1, 1});
    REQUIRE(p.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
      CHECK(distance(p.vertex(i), p.vertex(i + 1)) == doctest::Approx(1.0));
  }
  SUBCASE("flat quadrilateral") {
    const auto p = polygon_from_action_angle({{1.0}, {0.0}}, std::vector<double>{1, 1, 1, 1});
    REQUIRE(p.size() == 4);
    for (std::size_t i = 0; i < 4; ++i)
      CHECK(distance(p.vertex(i), p.vertex(i + 1)) == doctest::Approx(1.0).epsilon(1e-12));
    const Vec3 normal = cross(p.vertex(1) - p.vertex(0), p.vertex(2) - p.vertex(0));
    CHECK(std::abs(dot(normal, p.vertex(3) - p.vertex(0))) < 1e-12);
  }
  SUBCASE("round trip through measured coordinates") {
    RngStream rng(14, 0);
    for (int n : {5, 10, 100}) {
      const std::vector<double> lengths(n, 1.0);
      const MomentPolytope pt(lengths);
      for (int t = 0; t < 20; ++t) {
        ActionAngleCoords c;
        c.diagonals = sample_polytope_uniform(pt, rng);
        for (int i = 0; i < n - 3; ++i)
          c.dihedrals.push_back(rng.angle());
        const auto poly = polygon_from_action_angle(c, lengths);
        const auto back = measure_action_angle(poly);
        REQUIRE(back.diagonals.size() == c.diagonals.size());
        for (int i = 0; i < n - 3; ++i) {
          CHECK(std::abs(back.diagonals[i] - c.diagonals[i]) < 1e-9);
          const double diff = std::remainder(back.dihedrals[i] - c.dihedrals[i],
                                             2.0 * std::numbers::pi);
          CHECK(std::abs(diff) < 1e-9);
        }
      }
    }
  }
  SUBCASE("infeasible diagonals") {
    CHECK_THROWS(polygon_from_action_angle({{3.0}, {0.0}}, std::vector<double>{1, 1, 1, 1}));
  }
}

TEST_CASE("closed equilateral polygons close and have unit edges") {
  RngStream rng(15, 0);
  for (int n : {3, 4, 7, 100}) {
    for (int t = 0; t < 500; ++t) {
      const auto p = sample_closed_equilateral(n, rng);
      REQUIRE(p.size() == static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i)
        REQUIRE(std::abs(distance(p.vertex(i), p.vertex(i + 1)) - 1.0) < 1e-9);
    }
  }
  CHECK_THROWS(sample_closed_equilateral(2, rng));
}

TEST_CASE("four- and five-gons are unknotted") {
  const KnotTable table = build_table(default_table_path());
  RngStream rng(16, 0);
  for (int n : {4, 5})
    for (int t = 0; t < 200; ++t)
      CHECK(identify(sample_closed_equilateral(n, rng), table, rng) == KnotLabel::unknot());
}

TEST_CASE("closure arcs hit the requested end-to-end distance") {
  RngStream rng(17, 0);
  const auto one = sample_closure_arc(1, 1.0, rng);
  CHECK(one.num_edges() == 1);
  CHECK(end_to_end(one) == doctest::Approx(1.0));
  for (int t = 0; t < 100; ++t)
    CHECK(bend_angle(sample_closure_arc(2, 1.0, rng)) ==
          doctest::Approx(2.0 * std::numbers::pi / 3).epsilon(1e-9));
  for (int t = 0; t < 10000; ++t) {
    const auto arc = sample_closure_arc(10, 3.0, rng);
    REQUIRE(arc.num_edges() == 10);
    REQUIRE(std::abs(end_to_end(arc) - 3.0) < 1e-9);
  }
  CHECK_THROWS_AS(sample_closure_arc(3, 3.5, rng), InfeasibleClosureError);
}

TEST_CASE("glue_closure keeps the subarc and spins uniformly") {
  RngStream rng(18, 0);
  const auto host = sample_closed_equilateral(100, rng);
  std::vector<Vec3> av(host.vertices().begin(), host.vertices().begin() + 51);
  const OpenArc a(av);
  const auto b = sample_closure_arc(50, end_to_end(a), rng);
  const auto glued = glue_closure(a, b, rng);
  REQUIRE(glued.size() == 100);
  for (std::size_t i = 0; i < av.size(); ++i)
    CHECK(glued.vertex(i) == av[i]);
  for (std::size_t i = 0; i < 100; ++i)
    CHECK(std::abs(distance(glued.vertex(i), glued.vertex(i + 1)) - 1.0) < 1e-9);

  // Degenerate doubled edge.
  const OpenArc e1({{0, 0, 0}, {1, 0, 0}});
  CHECK_THROWS(glue_closure(e1, e1, rng));
  // Mismatched end-to-end distances.
  CHECK_THROWS(glue_closure(a, sample_closure_arc(50, end_to_end(a) + 0.5, rng), rng));

  // Recover the spin angle of the first interior vertex of b relative to the
  // unspun placement and test it for uniformity (20 bins, chi-square with
  // 19 degrees of freedom; 43.82 is the 0.999 quantile).
  const Polygon3 flat = glue_closure(a, b, 0.0);
  const Vec3 origin = a.back();
  const Vec3 axis = normalized(a.front() - a.back());
  auto radial = [&](const Vec3 &p) {
    const Vec3 d = p - origin;
    return d - dot(d, axis) * axis;
  };
  const Vec3 r0 = radial(flat.vertex(av.size()));
  std::vector<int> bins(20, 0);
  const int count = 10000;
  for (int t = 0; t < count; ++t) {
    const Vec3 r = radial(glue_closure(a, b, rng).vertex(av.size()));
    double angle = std::atan2(dot(axis, cross(r0, r)), dot(r0, r));
    if (angle < 0)
      angle += 2.0 * std::numbers::pi;
    ++bins[std::min(19, static_cast<int>(angle / (2.0 * std::numbers::pi) * 20))];
  }
  double chi2 = 0.0;
  for (int c : bins)
    chi2 += (c - count / 20.0) * (c - count / 20.0) / (count / 20.0);
  CHECK(chi2 < 43.82);
}
