#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "knotlab/geometry.hpp"
#include "knotlab/homfly.hpp"
#include "knotlab/laurent.hpp"
#include "knotlab/link_diagram.hpp"
#include "knotlab/rng.hpp"

namespace knotlab {

struct TableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Chirality { none, plus, minus };

/// One prime factor, e.g. +3_1 (crossing number 3, index 1, chirality +).
struct PrimeFactor {
  int crossing_number = 0;
  int index = 0;
  Chirality chirality = Chirality::none;

  std::string name() const; ///< "3_1"
  std::string to_string() const; ///< "+3_1", "-3_1" or "4_1"
  PrimeFactor mirrored() const;
  friend auto operator<=>(const PrimeFactor &, const PrimeFactor &) = default;
};

/// Knot type: a multiset of prime factors (empty for the unknot), the
/// distinguished "unknown", or a set of labels sharing one polynomial.
///
/// Text forms: "0_1", "+3_1", "4_1", "+3_1#-3_1", "+9_42/-9_42", "unknown".
class KnotLabel {
public:
  KnotLabel() : text_("0_1") {}
  static KnotLabel unknot() { return {}; }
  static KnotLabel unknown();
  static KnotLabel prime(int crossing_number, int index, Chirality chirality);
  static KnotLabel from_factors(std::vector<PrimeFactor> factors);
  /// Label set; a single alternative collapses to that label.
  static KnotLabel ambiguous(std::vector<KnotLabel> alternatives);
  /// Throws std::invalid_argument on malformed text.
  static KnotLabel parse(std::string_view text);

  bool is_unknown() const { return kind_ == Kind::unknown; }
  bool is_ambiguous() const { return kind_ == Kind::set; }
  bool is_unknot() const { return kind_ == Kind::knot && factors_.empty(); }
  bool is_composite() const { return kind_ == Kind::knot && factors_.size() > 1; }
  const std::vector<PrimeFactor> &factors() const { return factors_; }
  const std::vector<KnotLabel> &alternatives() const { return alternatives_; }
  /// Sum of factor crossing numbers; for a set, the smallest member's;
  /// -1 for unknown.
  int crossing_number() const;

  KnotLabel mirrored() const;
  const std::string &str() const { return text_; }

  friend bool operator==(const KnotLabel &a, const KnotLabel &b) { return a.text_ == b.text_; }

private:
  enum class Kind { knot, unknown, set };
  Kind kind_ = Kind::knot;
  std::vector<PrimeFactor> factors_;
  std::vector<KnotLabel> alternatives_;
  std::string text_;
};

/// Display order: unknot first, then by crossing number, then text;
/// ambiguous sets after plain labels of equal size; unknown last.
bool label_display_less(const KnotLabel &a, const KnotLabel &b);

struct KnotLabelHash {
  std::size_t operator()(const KnotLabel &l) const noexcept {
    return std::hash<std::string>{}(l.str());
  }
};

struct TableEntry {
  KnotLabel label;
  int crossing_number = 0;
  std::string chirality; ///< "+", "-", "none" (primes) or "chiral"/"none"
  PdCode pd;
  LaurentPoly2 polynomial;
};

/// Immutable knot table keyed by HOMFLYPT polynomial.
class KnotTable {
public:
  KnotTable() = default;
  explicit KnotTable(std::vector<TableEntry> entries);

  const std::vector<TableEntry> &entries() const { return entries_; }
  const TableEntry *find(const KnotLabel &label) const;
  /// Label (or label set) with this polynomial; unknown when absent.
  KnotLabel lookup(const LaurentPoly2 &poly) const;

private:
  std::vector<TableEntry> entries_;
  std::unordered_map<std::string, std::size_t> by_name_;
  std::unordered_map<LaurentPoly2, KnotLabel, LaurentPoly2Hash> by_poly_;
};

/// Generates table rows from a prime PD list (name, crossing number,
/// "chiral"/"amphichiral", PD code): every prime with both chiralities,
/// all two-factor sums of primes through `composite_max_crossings`
/// crossings and all three-factor sums of trefoils. "+" is the chirality
/// whose diagram has positive writhe; for a chiral knot whose listed diagram
/// has writhe zero, the listed diagram is taken as "+".
std::vector<TableEntry> generate_table(const std::string &prime_pd_path,
                                       int composite_max_crossings = 7);

void write_table(const std::vector<TableEntry> &entries, const std::string &path);

/// Loads a table file, recomputing every polynomial from its PD code and
/// checking it against the stored string, the mirror rule for "-" rows and
/// the product rule for composites. Throws TableError on any mismatch,
/// duplicate name or parse error.
KnotTable build_table(const std::string &path);

/// Path of the shipped table file.
std::string default_table_path();

/// kmt_simplify, generic_project, HOMFLYPT, then table lookup. A projection
/// whose reduced diagram still exceeds the crossing cap is retried with up
/// to `extra_projections` further directions before returning unknown.
/// The crossing cap is the engine's.
struct IdentifyOptions {
  int extra_projections = 10;
};

std::optional<LaurentPoly2> polygon_homfly(const Polygon3 &polygon, RngStream &rng,
                                           HomflyEngine &engine,
                                           const IdentifyOptions &options = {});
KnotLabel identify(const Polygon3 &polygon, const KnotTable &table, RngStream &rng,
                   HomflyEngine &engine, const IdentifyOptions &options = {});
KnotLabel identify(const Polygon3 &polygon, const KnotTable &table, RngStream &rng);

} // namespace knotlab
