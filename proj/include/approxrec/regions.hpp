#pragma once

#include <map>
#include <utility>
#include <vector>

#include "approxrec/graph.hpp"

namespace approxrec {

// Classification of a connected vertex set by the perimeter sides it
// touches. A corner vertex touches both of its sides.
enum class RegionType : int {
  kInterior = 1,       // no perimeter vertex
  kOneSide = 2,
  kAdjacentSides = 3,
  kOppositeSides = 4,
  kThreeSides = 5,
  kAllSides = 6,
};

// Type 1 versus types 2-5.
enum class TypeClass : int { kInterior = 0, kPerimeter = 1 };

inline TypeClass type_class(RegionType t) {
  return t == RegionType::kInterior ? TypeClass::kInterior
                                    : TypeClass::kPerimeter;
}

RegionType region_type_from_sides(unsigned side_mask);
// Union of side masks over the set.
unsigned touched_sides(const GridGraph& g, const VertexSet& s);

struct RegionSet {
  VertexSet members;
  std::vector<EdgeId> boundary;
  RegionType type;
  bool connected;
};

// Throws ConfigError for empty or disconnected sets.
RegionType classify_region(const GridGraph& g, const VertexSet& s);
RegionSet make_region(const GridGraph& g, const VertexSet& s);

struct FilledRegion {
  RegionSet origin;
  VertexSet filled;
  std::vector<EdgeId> boundary;
};

// S united with every component of the complement except one 3-sided
// component. When two 3-sided components exist the one holding the smallest
// vertex id is the one left out. Rejects type-6 input.
FilledRegion fill_in(const GridGraph& g, const VertexSet& s);

struct EnumerationLimits {
  int max_boundary = 14;
  int max_rows = 8;
  int max_cols = 8;
};

// A simple cycle of the dual graph, as the primal edges it crosses.
struct DualCycle {
  std::vector<EdgeId> edges;
  bool through_outer = false;
};

// Every simple cycle of length <= max_length, each once. Parallel over start
// faces; output order is independent of the thread count.
std::vector<DualCycle> enumerate_dual_cycles(const DualGraph& dual,
                                             int max_length);
std::vector<DualCycle> enumerate_dual_cycles_serial(const DualGraph& dual,
                                                    int max_length);

struct EnumeratedRegion {
  VertexSet filled;
  std::vector<EdgeId> boundary;  // sorted
  RegionType type;
  bool through_outer;  // dual cycle uses the outer face
};

// Filled-in sets with |boundary| <= max_boundary, sorted by
// (boundary size, type class, members).
std::vector<EnumeratedRegion> enumerate_filled_regions(
    const GridGraph& g, int max_boundary, const EnumerationLimits& limits = {});
std::vector<EnumeratedRegion> enumerate_filled_regions_serial(
    const GridGraph& g, int max_boundary, const EnumerationLimits& limits = {});

struct RegionTally {
  long count = 0;
  int max_area = 0;
};

// Counts keyed by (boundary size, type class).
std::map<std::pair<int, TypeClass>, RegionTally> tally_regions(
    const std::vector<EnumeratedRegion>& regions);

}  // namespace approxrec
