#include "knotlab/classify.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "knotlab/sampling.hpp"

namespace knotlab {

std::string to_string(Method m) {
  switch (m) {
  case Method::su:
    return "SU";
  case Method::pu:
    return "PU";
  case Method::sr:
    return "SR";
  default:
    return "PR";
  }
}

Method parse_method(std::string_view text) {
  std::string s(text);
  for (auto &ch : s)
    ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (s == "su")
    return Method::su;
  if (s == "pu")
    return Method::pu;
  if (s == "sr")
    return Method::sr;
  if (s == "pr")
    return Method::pr;
  throw std::invalid_argument("unknown classifier method: " + std::string(text));
}

double KnotDistribution::weight_of(const KnotLabel &label) const {
  for (const auto &[l, w] : weights)
    if (l == label)
      return w;
  return 0.0;
}

Polygon3 ray_closure(const OpenArc &arc, const Vec3 &w, double margin) {
  const auto v = arc.vertices();
  const std::size_t k = arc.num_edges();
  auto parallel = [&](const Vec3 &e) { return norm(cross(e, w)) < kGenericityTolerance * norm(e); };
  if (parallel(v[1] - v[0]) || parallel(v[k] - v[k - 1]))
    throw DegenerateDirection("ray direction is parallel to an end edge");
  const Vec3 chord = v[k] - v[0];
  if (norm(chord - w * dot(chord, w)) < kGenericityTolerance)
    throw DegenerateDirection("both rays project to the same line");

  const double h = support_height(v, w) + margin;
  std::vector<Vec3> verts(v.begin(), v.end());
  verts.push_back(v[k] + w * (h - dot(w, v[k])));
  verts.push_back(v[0] + w * (h - dot(w, v[0])));
  return Polygon3::from_vertices(std::move(verts));
}

Prediction predict_from(KnotDistribution distribution, RngStream &rng) {
  if (distribution.weights.empty())
    throw std::invalid_argument("empty knot distribution");
  double best = -1.0;
  for (const auto &[l, w] : distribution.weights)
    best = std::max(best, w);
  // Weights are sums of identical terms in a fixed order, so exact ties
  // between equally common labels compare equal; allow rounding slack.
  const double slack = 1e-12;
  std::vector<std::size_t> top;
  for (std::size_t i = 0; i < distribution.weights.size(); ++i)
    if (distribution.weights[i].second >= best - slack)
      top.push_back(i);
  Prediction p;
  std::size_t pick = top.front();
  if (top.size() > 1) {
    pick = top[rng.below(top.size())];
    p.tie_broken = true;
  }
  p.label = distribution.weights[pick].first;
  p.distribution = std::move(distribution);
  return p;
}

namespace {

bool is_closed(const OpenArc &arc) { return end_to_end(arc) < 1e-9; }

Polygon3 polygon_of_closed_arc(const OpenArc &arc) {
  const auto v = arc.vertices();
  return Polygon3(std::vector<Vec3>(v.begin(), v.end() - 1));
}

Prediction whole_polygon(const OpenArc &arc, const ClassifierContext &ctx, RngStream &rng) {
  KnotDistribution dist;
  dist.source = KnotDistribution::Source::whole_polygon;
  dist.samples = 1;
  dist.weights.push_back({identify(polygon_of_closed_arc(arc), ctx.table, rng, ctx.engine), 1.0});
  return predict_from(std::move(dist), rng);
}

void add_weight(KnotDistribution &dist, const KnotLabel &label, double w) {
  for (auto &[l, x] : dist.weights)
    if (l == label) {
      x += w;
      return;
    }
  dist.weights.push_back({label, w});
}

// Label of the ray closure in direction w; degenerate directions are
// rotated by 1e-6 rad about a random axis up to five times.
std::optional<KnotLabel> ray_label(const OpenArc &arc, Vec3 w, const ClassifierContext &ctx,
                                   RngStream &rng) {
  for (int attempt = 0; attempt <= 5; ++attempt) {
    try {
      return identify(ray_closure(arc, w), ctx.table, rng, ctx.engine);
    } catch (const DegenerateDirection &) {
      Vec3 axis = cross(w, rng.unit_vector());
      if (norm(axis) < 1e-12)
        axis = any_orthogonal(w);
      w = normalized(rotate_vector(w, normalized(axis), 1e-6));
    }
  }
  return std::nullopt;
}

} // namespace

Prediction classify_su(const OpenArc &arc, const ClassifierContext &ctx, RngStream &rng) {
  if (is_closed(arc))
    return whole_polygon(arc, ctx, rng);
  KnotDistribution dist;
  dist.source = KnotDistribution::Source::ray_closure;
  // A direction is drawn uniformly from the set; a direction that stays
  // degenerate after perturbation is replaced by a fresh draw.
  for (int draw = 0; draw < 100; ++draw) {
    const Vec3 w = ctx.directions.dirs[rng.below(ctx.directions.size())];
    if (auto label = ray_label(arc, w, ctx, rng)) {
      dist.samples = 1;
      dist.weights.push_back({*label, 1.0});
      return predict_from(std::move(dist), rng);
    }
    ++dist.dropped;
  }
  throw DegenerateDirection("no usable ray direction for this arc");
}

Prediction classify_pu(const OpenArc &arc, const ClassifierContext &ctx, RngStream &rng) {
  if (is_closed(arc))
    return whole_polygon(arc, ctx, rng);
  KnotDistribution dist;
  dist.source = KnotDistribution::Source::ray_closure;
  double total = 0.0;
  for (std::size_t i = 0; i < ctx.directions.size(); ++i) {
    const auto label = ray_label(arc, ctx.directions.dirs[i], ctx, rng);
    if (!label) {
      ++dist.dropped;
      continue;
    }
    const double w = ctx.directions.weights[i];
    add_weight(dist, *label, w);
    total += w;
    ++dist.samples;
  }
  if (dist.samples == 0)
    throw DegenerateDirection("every ray direction is degenerate for this arc");
  for (auto &[l, w] : dist.weights)
    w /= total;
  return predict_from(std::move(dist), rng);
}

namespace {

KnotLabel random_closure_label(const OpenArc &arc, int n, const ClassifierContext &ctx,
                               RngStream &rng) {
  const int m = n - static_cast<int>(arc.num_edges());
  const OpenArc b = sample_closure_arc(m, end_to_end(arc), rng);
  return identify(glue_closure(arc, b, rng), ctx.table, rng, ctx.engine);
}

void check_closure_size(const OpenArc &arc, int n) {
  if (static_cast<int>(arc.num_edges()) > n)
    throw std::invalid_argument("arc has more edges than the host polygon");
}

} // namespace

Prediction classify_sr(const OpenArc &arc, int n, const ClassifierContext &ctx, RngStream &rng) {
  check_closure_size(arc, n);
  if (is_closed(arc) || static_cast<int>(arc.num_edges()) == n)
    return whole_polygon(arc, ctx, rng);
  KnotDistribution dist;
  dist.source = KnotDistribution::Source::random_closure;
  dist.samples = 1;
  dist.weights.push_back({random_closure_label(arc, n, ctx, rng), 1.0});
  return predict_from(std::move(dist), rng);
}

Prediction classify_pr(const OpenArc &arc, int n, const ClassifierContext &ctx, RngStream &rng) {
  check_closure_size(arc, n);
  if (is_closed(arc) || static_cast<int>(arc.num_edges()) == n)
    return whole_polygon(arc, ctx, rng);
  if (ctx.closures < 1)
    throw std::invalid_argument("closure count must be positive");
  KnotDistribution dist;
  dist.source = KnotDistribution::Source::random_closure;
  std::vector<std::pair<KnotLabel, int>> counts;
  for (int i = 0; i < ctx.closures; ++i) {
    const KnotLabel label = random_closure_label(arc, n, ctx, rng);
    auto it = std::find_if(counts.begin(), counts.end(),
                           [&](const auto &c) { return c.first == label; });
    if (it == counts.end())
      counts.push_back({label, 1});
    else
      ++it->second;
  }
  for (const auto &[l, c] : counts)
    dist.weights.push_back({l, static_cast<double>(c) / ctx.closures});
  dist.samples = ctx.closures;
  return predict_from(std::move(dist), rng);
}

Prediction classify(Method method, const OpenArc &arc, int n, const ClassifierContext &ctx,
                    RngStream &rng) {
  switch (method) {
  case Method::su:
    return classify_su(arc, ctx, rng);
  case Method::pu:
    return classify_pu(arc, ctx, rng);
  case Method::sr:
    return classify_sr(arc, n, ctx, rng);
  default:
    return classify_pr(arc, n, ctx, rng);
  }
}

} // namespace knotlab
