#include "approxrec/regions.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <string>

#include "approxrec/errors.hpp"

namespace approxrec {

RegionType region_type_from_sides(unsigned mask) {
  switch (std::popcount(mask)) {
    case 0:
      return RegionType::kInterior;
    case 1:
      return RegionType::kOneSide;
    case 2: {
      const bool opposite =
          mask == (sides::kTop | sides::kBottom) ||
          mask == (sides::kLeft | sides::kRight);
      return opposite ? RegionType::kOppositeSides : RegionType::kAdjacentSides;
    }
    case 3:
      return RegionType::kThreeSides;
    default:
      return RegionType::kAllSides;
  }
}

unsigned touched_sides(const GridGraph& g, const VertexSet& s) {
  unsigned mask = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (s.contains(v)) mask |= g.side_mask(v);
  }
  return mask;
}

RegionType classify_region(const GridGraph& g, const VertexSet& s) {
  if (s.universe_size() != g.num_vertices()) {
    throw ConfigError("vertex set does not match grid size");
  }
  if (s.empty()) throw ConfigError("cannot classify an empty region");
  if (!is_induced_connected(g, s)) {
    throw ConfigError("region is not connected");
  }
  return region_type_from_sides(touched_sides(g, s));
}

RegionSet make_region(const GridGraph& g, const VertexSet& s) {
  return RegionSet{s, boundary(g, s), classify_region(g, s), true};
}

FilledRegion fill_in(const GridGraph& g, const VertexSet& s) {
  RegionSet origin = make_region(g, s);
  if (origin.type == RegionType::kAllSides) {
    throw ConfigError("fill-in is undefined for type-6 regions");
  }
  const auto comps = induced_components(g, s.complement());
  // Components come ordered by smallest member, so the first 3-sided one
  // holds the smallest vertex id.
  const std::vector<Vertex>* kept = nullptr;
  for (const auto& comp : comps) {
    unsigned mask = 0;
    for (Vertex v : comp) mask |= g.side_mask(v);
    if (std::popcount(mask) >= 3) {
      kept = &comp;
      break;
    }
  }
  if (kept == nullptr) {
    throw ConfigError("region has no 3-sided complement component");
  }
  VertexSet filled = VertexSet::all(g.num_vertices());
  for (Vertex v : *kept) filled.erase(v);
  std::vector<EdgeId> bnd = boundary(g, filled);
  return FilledRegion{std::move(origin), std::move(filled), std::move(bnd)};
}

namespace {

// DFS over simple cycles whose smallest face is `start`. A cycle is kept in
// one orientation only: its first edge id is below its last.
class CycleSearch {
 public:
  CycleSearch(const DualGraph& dual, int max_length, int start)
      : dual_(dual),
        max_length_(max_length),
        start_(start),
        dist_(dual.num_vertices(), max_length + 1),
        on_path_(dual.num_vertices(), 0) {
    // Distances back to `start` inside the faces >= start bound the
    // remaining cycle length from below.
    std::deque<int> queue{start};
    dist_[start] = 0;
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      for (const Incidence& inc : dual_.neighbors(x)) {
        if (inc.neighbor < start_ || dist_[inc.neighbor] <= dist_[x] + 1) {
          continue;
        }
        dist_[inc.neighbor] = dist_[x] + 1;
        queue.push_back(inc.neighbor);
      }
    }
  }

  std::vector<DualCycle> run() {
    on_path_[start_] = 1;
    extend(start_);
    return std::move(found_);
  }

 private:
  void extend(int x) {
    const int depth = static_cast<int>(path_.size());
    for (const Incidence& inc : dual_.neighbors(x)) {
      const int w = inc.neighbor;
      if (w == start_) {
        if (depth == 0 || depth + 1 > max_length_) continue;
        if (inc.edge == path_.back() || path_.front() > inc.edge) continue;
        DualCycle cycle;
        cycle.edges = path_;
        cycle.edges.push_back(inc.edge);
        cycle.through_outer = on_path_[dual_.outer()] != 0;
        std::sort(cycle.edges.begin(), cycle.edges.end());
        found_.push_back(std::move(cycle));
        continue;
      }
      if (w < start_ || on_path_[w]) continue;
      if (depth + 1 + dist_[w] > max_length_) continue;
      on_path_[w] = 1;
      path_.push_back(inc.edge);
      extend(w);
      path_.pop_back();
      on_path_[w] = 0;
    }
  }

  const DualGraph& dual_;
  int max_length_;
  int start_;
  std::vector<int> dist_;
  std::vector<std::uint8_t> on_path_;
  std::vector<EdgeId> path_;
  std::vector<DualCycle> found_;
};

std::vector<DualCycle> flatten(std::vector<std::vector<DualCycle>>& parts) {
  std::vector<DualCycle> out;
  for (auto& part : parts) {
    std::move(part.begin(), part.end(), std::back_inserter(out));
  }
  return out;
}

void check_limits(const GridGraph& g, int max_boundary,
                  const EnumerationLimits& limits) {
  if (max_boundary > limits.max_boundary) {
    throw CapacityError("boundary budget " + std::to_string(max_boundary) +
                        " exceeds enumeration cap " +
                        std::to_string(limits.max_boundary));
  }
  if (g.rows() > limits.max_rows || g.cols() > limits.max_cols) {
    throw CapacityError("grid exceeds enumeration cap");
  }
  if (g.rows() < 2 || g.cols() < 2) {
    throw ConfigError("region enumeration needs at least a 2x2 grid");
  }
}

// Both sides of the cut, each kept when it is a fixed point of fill-in:
// not type 6 and with a 3-sided complement.
void regions_from_cycle(const GridGraph& g, const DualCycle& cycle,
                        std::vector<EnumeratedRegion>& out) {
  std::vector<std::uint8_t> cut(g.num_edges(), 0);
  for (EdgeId e : cycle.edges) cut[e] = 1;
  VertexSet side(g.num_vertices());
  std::vector<Vertex> stack{0};
  side.insert(0);
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (const Incidence& inc : g.neighbors(v)) {
      if (cut[inc.edge] || side.contains(inc.neighbor)) continue;
      side.insert(inc.neighbor);
      stack.push_back(inc.neighbor);
    }
  }
  for (const VertexSet& candidate : {side, side.complement()}) {
    const RegionType type =
        region_type_from_sides(touched_sides(g, candidate));
    if (type == RegionType::kAllSides) continue;
    if (std::popcount(touched_sides(g, candidate.complement())) < 3) continue;
    out.push_back({candidate, cycle.edges, type, cycle.through_outer});
  }
}

std::vector<EnumeratedRegion> regions_from_cycles(
    const GridGraph& g, const std::vector<DualCycle>& cycles) {
  std::vector<EnumeratedRegion> out;
  for (const DualCycle& c : cycles) regions_from_cycle(g, c, out);
  std::sort(out.begin(), out.end(),
            [](const EnumeratedRegion& a, const EnumeratedRegion& b) {
              const auto ka = std::pair(a.boundary.size(), type_class(a.type));
              const auto kb = std::pair(b.boundary.size(), type_class(b.type));
              if (ka != kb) return ka < kb;
              return a.filled.members() < b.filled.members();
            });
  return out;
}

}  // namespace

std::vector<DualCycle> enumerate_dual_cycles(const DualGraph& dual,
                                             int max_length) {
  const int n = dual.num_vertices();
  std::vector<std::vector<DualCycle>> parts(n);
#pragma omp parallel for schedule(dynamic)
  for (int start = 0; start < n; ++start) {
    parts[start] = CycleSearch(dual, max_length, start).run();
  }
  return flatten(parts);
}

std::vector<DualCycle> enumerate_dual_cycles_serial(const DualGraph& dual,
                                                    int max_length) {
  std::vector<std::vector<DualCycle>> parts;
  for (int start = 0; start < dual.num_vertices(); ++start) {
    parts.push_back(CycleSearch(dual, max_length, start).run());
  }
  return flatten(parts);
}

std::vector<EnumeratedRegion> enumerate_filled_regions(
    const GridGraph& g, int max_boundary, const EnumerationLimits& limits) {
  check_limits(g, max_boundary, limits);
  return regions_from_cycles(
      g, enumerate_dual_cycles(DualGraph(g), max_boundary));
}

std::vector<EnumeratedRegion> enumerate_filled_regions_serial(
    const GridGraph& g, int max_boundary, const EnumerationLimits& limits) {
  check_limits(g, max_boundary, limits);
  return regions_from_cycles(
      g, enumerate_dual_cycles_serial(DualGraph(g), max_boundary));
}

std::map<std::pair<int, TypeClass>, RegionTally> tally_regions(
    const std::vector<EnumeratedRegion>& regions) {
  std::map<std::pair<int, TypeClass>, RegionTally> out;
  for (const EnumeratedRegion& r : regions) {
    RegionTally& t =
        out[{static_cast<int>(r.boundary.size()), type_class(r.type)}];
    ++t.count;
    t.max_area = std::max(t.max_area, r.filled.size());
  }
  return out;
}

}  // namespace approxrec
