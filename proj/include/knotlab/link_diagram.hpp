#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "knotlab/diagram.hpp"

namespace knotlab {

/// Planar-diagram code: one [i, j, k, l] quadruple per crossing, edge labels
/// counter-clockwise starting from the incoming under-strand.
using PdCode = std::vector<std::array<int, 4>>;

PdCode parse_pd(std::string_view text);
std::string format_pd(const PdCode &pd);

/// Oriented link diagram as a signed Gauss code.
///
/// Each component is a cyclic sequence of crossing passes; a pass is
/// encoded as (crossing << 1) | over. Every crossing is passed exactly twice,
/// once over and once under. Components with no passes are crossingless
/// circles.
struct LinkDiagram {
  std::vector<std::vector<int>> components;
  std::vector<std::int8_t> signs;

  static constexpr int pass(int crossing, bool over) { return (crossing << 1) | (over ? 1 : 0); }
  static constexpr int crossing_of(int p) { return p >> 1; }
  static constexpr bool is_over(int p) { return (p & 1) != 0; }

  int num_crossings() const { return static_cast<int>(signs.size()); }
  int num_components() const { return static_cast<int>(components.size()); }
  int writhe() const;

  /// Throws std::invalid_argument if a crossing is not passed exactly once
  /// over and once under.
  void validate() const;

  static LinkDiagram from_knot_diagram(const KnotDiagram &d);
  /// Knot diagram from a PD code (single component).
  static LinkDiagram from_pd(const PdCode &pd);
  /// PD code of a single-component diagram.
  PdCode to_pd() const;

  /// All crossings switched: the diagram of the mirror image.
  LinkDiagram mirrored() const;
  /// Crossing c switched (over/under exchanged, sign negated).
  LinkDiagram switched(int c) const;
  /// Oriented smoothing of crossing c; the crossing is removed and higher
  /// crossing ids shift down by one.
  LinkDiagram smoothed(int c) const;

  /// Connected sum of two knot diagrams, joined at their base points.
  static LinkDiagram connected_sum(const LinkDiagram &a, const LinkDiagram &b);
};

} // namespace knotlab
