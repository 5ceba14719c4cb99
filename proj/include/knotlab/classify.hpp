#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "knotlab/direction_set.hpp"
#include "knotlab/geometry.hpp"
#include "knotlab/homfly.hpp"
#include "knotlab/knot_table.hpp"
#include "knotlab/rng.hpp"

namespace knotlab {

/// Thrown when a ray direction is (nearly) parallel to an end edge of the
/// arc or the two rays would coincide.
struct DegenerateDirection : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Method { su, pu, sr, pr };

std::string to_string(Method m);
/// Accepts "su", "pu", "sr", "pr" (any case).
Method parse_method(std::string_view text);

/// Distribution of closure knot types for one arc.
struct KnotDistribution {
  enum class Source { ray_closure, random_closure, whole_polygon };
  /// Labels in first-seen order with weights summing to 1.
  std::vector<std::pair<KnotLabel, double>> weights;
  Source source = Source::ray_closure;
  int samples = 0;       ///< closures that contributed
  int dropped = 0;       ///< degenerate directions dropped (PU/SU)
  double weight_of(const KnotLabel &label) const;
};

struct Prediction {
  KnotLabel label;
  KnotDistribution distribution;
  bool tie_broken = false;
  double top_weight() const { return distribution.weight_of(label); }
};

/// Ray closure: rays from both endpoints along w up to height
/// support_height(arc, w) + margin, joined by one segment.
Polygon3 ray_closure(const OpenArc &arc, const Vec3 &w, double margin = 1.0);

/// Shared inputs for the four classifiers. The engine is per task.
struct ClassifierContext {
  const KnotTable &table;
  const DirectionSet &directions;
  HomflyEngine &engine;
  int closures = 100; ///< PR sample count
};

Prediction classify_su(const OpenArc &arc, const ClassifierContext &ctx, RngStream &rng);
Prediction classify_pu(const OpenArc &arc, const ClassifierContext &ctx, RngStream &rng);
Prediction classify_sr(const OpenArc &arc, int n, const ClassifierContext &ctx, RngStream &rng);
Prediction classify_pr(const OpenArc &arc, int n, const ClassifierContext &ctx, RngStream &rng);

Prediction classify(Method method, const OpenArc &arc, int n, const ClassifierContext &ctx,
                    RngStream &rng);

/// Argmax of a weighted label list with uniform random tie-breaking.
Prediction predict_from(KnotDistribution distribution, RngStream &rng);

} // namespace knotlab
