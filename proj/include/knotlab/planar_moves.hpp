#pragma once

#include "knotlab/link_diagram.hpp"

namespace knotlab {

/// Faces of a connected diagram. Edge e runs from pass e to the next pass
/// along its component (edges are numbered component by component).
struct DiagramFaces {
  std::vector<int> left;  ///< face on the left of each edge
  std::vector<int> right; ///< face on the right of each edge
  int num_faces = 0;
};

/// Traces the faces of a connected diagram with at least one crossing.
DiagramFaces trace_faces(const LinkDiagram &d);

/// Reroutes one maximal over- or under-strand along a path crossing fewer
/// edges, if such a path exists. The strand stays above (below) everything,
/// so the move is an isotopy. Requires a connected diagram with no
/// crossingless components. Returns true when the crossing count dropped.
bool strand_pass(LinkDiagram &d);

/// Reidemeister I/II reduction alternated with strand passes until neither
/// lowers the crossing count.
void simplify_diagram(LinkDiagram &d);

} // namespace knotlab
