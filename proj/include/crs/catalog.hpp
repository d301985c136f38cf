#pragma once

#include <string>
#include <vector>

#include "crs/segment.hpp"

namespace crs {

/// Letter of a path-word position: tight turn, great-circle arc, or
/// turn-in-place.
enum class PathLetter { kC, kG, kT };

/// Angle class of a path-word position.  kFree angles are independent
/// unknowns; kFixedBeta is pinned to the full-traverse angle beta;
/// kSharedMu / kSharedPsi positions share one unknown across the word.
enum class AngleClass { kFree, kFixedBeta, kSharedMu, kSharedPsi };

inline bool is_shared(AngleClass c) {
  return c == AngleClass::kSharedMu || c == AngleClass::kSharedPsi;
}

/// Junction between two adjacent positions: a cusp "|" flips the speed sign
/// and preserves the turn direction; a plain junction is an inflection
/// (between turns) or a tangency (next to G and T letters).
enum class JunctionMark { kPlain, kCusp };

/// Half-open/closed angle interval with tolerance-aware membership.
struct AngleInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_open = true;
  bool hi_open = false;

  /// Membership with a tolerance band: open ends exclude a tol-wide sliver,
  /// closed ends admit a tol-wide overshoot (which clamp() then removes).
  bool contains(double x, double tol = 1e-9) const {
    const bool lo_ok = lo_open ? x >= lo + tol : x >= lo - tol;
    const bool hi_ok = hi_open ? x <= hi - tol : x <= hi + tol;
    return lo_ok && hi_ok;
  }

  /// Clamps a tolerated overshoot back onto a closed end.
  double clamp(double x) const {
    if (!hi_open && x > hi) return hi;
    if (!lo_open && x < lo) return lo;
    return x;
  }
};

/// One abstract path type of the sufficient list, e.g. "CC_mu|C_muC".
struct AbstractPathType {
  std::string name;
  std::vector<PathLetter> letters;
  std::vector<AngleClass> classes;
  std::vector<JunctionMark> junctions;  // size() - 1 entries
  std::vector<int> interval_index;      // position -> index into intervals
  std::vector<AngleInterval> intervals; // unique storage; shared positions alias
  double beta_angle = 0.0;              // value pinned at kFixedBeta positions

  int size() const { return static_cast<int>(letters.size()); }
  bool empty() const { return letters.empty(); }
};

/// Angle domain of one position.  Positions sharing an unknown return a
/// reference to the same interval object.
const AngleInterval& angle_domain(const AbstractPathType& t, int position);

/// The sufficient list for one steering bound, built once and then
/// read-shared.  Contains the 23 abstract types plus the empty path.
struct Catalog {
  double u_max = 1.0;
  double beta_angle = 0.0;
  std::vector<AbstractPathType> types;
};

/// Builds the catalog: the 17 listed forms, their 6 distinct reversals, and
/// the empty path.  Throws UnsupportedRegime for u_max < 1.
Catalog sufficient_list(double u_max);

/// One sign-resolved candidate: segment kinds plus the angle metadata needed
/// by the solver (copied so candidates are self-contained).
struct ConcreteCandidate {
  std::string type_name;
  std::vector<SegmentKind> kinds;
  std::vector<AngleClass> classes;
  std::vector<AngleInterval> domains;  // per position
  double beta_angle = 0.0;

  int size() const { return static_cast<int>(kinds.size()); }

  /// Concatenated kind names, e.g. "R-R+G+L+".
  std::string word() const;
};

/// Expands an abstract type into every turn/speed assignment consistent with
/// the junction rules: across a cusp the turn is preserved and the speed
/// flips; across a turn-turn inflection the turn flips and the speed is
/// preserved; across a G the speed is preserved (both turn choices kept);
/// across a T the turn is preserved (both speed choices kept).
std::vector<ConcreteCandidate> expand_concrete(const AbstractPathType& t);

}  // namespace crs
