#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>

#include "knotlab/diagram.hpp"
#include "knotlab/laurent.hpp"
#include "knotlab/link_diagram.hpp"

namespace knotlab {

/// Default limit on crossings remaining after diagram reduction.
inline constexpr int kDefaultCrossingCap = 50;

/// HOMFLYPT polynomial with a*P(L+) - a^-1*P(L-) = z*P(L0), P(unknot) = 1.
///
/// Evaluation follows a descending-diagram skein tree: components are
/// ordered and given base points so that as few crossings as possible are
/// first met from below; walking the diagram, every such crossing is
/// switched and its smoothing evaluated recursively, and the final
/// descending diagram is an unlink. Reidemeister I/II reductions, strand
/// passes, split components and a memo of connected subdiagrams keep the
/// tree small.
///
/// An engine is not thread-safe; use one per task.
class HomflyEngine {
public:
  explicit HomflyEngine(int max_crossings = kDefaultCrossingCap,
                        std::size_t memo_limit = 200000);

  /// nullopt when more than max_crossings remain after reduction.
  std::optional<LaurentPoly2> compute(const LinkDiagram &diagram);

  std::size_t memo_size() const { return memo_.size(); }
  std::size_t memo_hits() const { return hits_; }
  void clear_memo() { memo_.clear(); }

private:
  LaurentPoly2 eval(LinkDiagram d);
  LaurentPoly2 eval_part(LinkDiagram d);
  LaurentPoly2 eval_connected(const LinkDiagram &d);
  const LaurentPoly2 &delta_pow(int e);

  int max_crossings_;
  std::size_t memo_limit_;
  std::size_t hits_ = 0;
  std::unordered_map<std::string, LaurentPoly2> memo_;
  std::vector<LaurentPoly2> delta_pows_;
};

/// Removes Reidemeister I loops and Reidemeister II bigons visible in the
/// Gauss code until none remain. Crossings are renumbered.
void reduce_reidemeister(LinkDiagram &d);

/// One-shot helpers using a fresh engine.
std::optional<LaurentPoly2> homfly(const LinkDiagram &diagram,
                                   int max_crossings = kDefaultCrossingCap);
std::optional<LaurentPoly2> homfly(const KnotDiagram &diagram,
                                   int max_crossings = kDefaultCrossingCap);

/// (a - a^-1) z^-1, the value of the two-component unlink.
LaurentPoly2 unlink_factor();

} // namespace knotlab
