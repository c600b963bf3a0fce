#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "approxrec/errors.hpp"
#include "approxrec/regions.hpp"
#include "support.hpp"

using namespace approxrec;

namespace {

VertexSet cells(const GridGraph& g, std::initializer_list<std::pair<int, int>> rc) {
  VertexSet s(g.num_vertices());
  for (auto [r, c] : rc) s.insert(g.vertex(r, c));
  return s;
}

// Filled regions straight from the definition: F and its complement both
// connected, F not touching all four sides, the complement touching three.
std::set<std::vector<Vertex>> filled_regions_by_subsets(const GridGraph& g,
                                                        int max_boundary) {
  const int n = g.num_vertices();
  std::set<std::vector<Vertex>> out;
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
    const VertexSet f = testing::from_mask(n, mask);
    const VertexSet rest = f.complement();
    int cut = 0;
    for (const Edge& e : g.edges()) cut += f.contains(e.u) != f.contains(e.v);
    if (cut > max_boundary) continue;
    unsigned in_sides = 0;
    unsigned out_sides = 0;
    for (Vertex v = 0; v < n; ++v) {
      (f.contains(v) ? in_sides : out_sides) |= g.side_mask(v);
    }
    if (in_sides == 15 || std::popcount(out_sides) < 3) continue;
    if (!is_induced_connected(g, f) || !is_induced_connected(g, rest)) continue;
    out.insert(f.members());
  }
  return out;
}

// The dual edges of a cut form one simple cycle: every face is met 0 or 2
// times and the faces met are connected through the cut.
bool is_simple_dual_cycle(const DualGraph& d, const std::vector<EdgeId>& cut,
                          bool& through_outer) {
  std::map<int, std::vector<std::pair<int, EdgeId>>> adj;
  for (EdgeId e : cut) {
    const auto [a, b] = d.ends(e);
    adj[a].push_back({b, e});
    adj[b].push_back({a, e});
  }
  for (const auto& [face, list] : adj) {
    if (list.size() != 2) return false;
  }
  std::set<int> seen{adj.begin()->first};
  std::vector<int> stack{adj.begin()->first};
  while (!stack.empty()) {
    const int f = stack.back();
    stack.pop_back();
    for (auto [g, e] : adj[f]) {
      if (seen.insert(g).second) stack.push_back(g);
    }
  }
  through_outer = adj.count(d.outer()) > 0;
  return seen.size() == adj.size();
}

}  // namespace

TEST_SUITE("regions") {

TEST_CASE("region type examples") {
  const GridGraph g4(4, 4);
  CHECK(classify_region(g4, cells(g4, {{1, 1}})) == RegionType::kInterior);
  const GridGraph g(3, 3);
  CHECK(classify_region(g, cells(g, {{0, 0}})) == RegionType::kAdjacentSides);
  CHECK(classify_region(g, cells(g, {{1, 0}, {1, 1}, {1, 2}})) ==
        RegionType::kOppositeSides);
  CHECK(classify_region(g, cells(g, {{0, 1}})) == RegionType::kOneSide);
  CHECK(classify_region(g, cells(g, {{0, 0}, {0, 1}, {0, 2}})) ==
        RegionType::kThreeSides);
  CHECK(classify_region(g, VertexSet::all(9)) == RegionType::kAllSides);
  CHECK_THROWS_AS(classify_region(g, VertexSet(9)), ConfigError);
  CHECK_THROWS_AS(classify_region(g, cells(g, {{0, 0}, {2, 2}})), ConfigError);
}

TEST_CASE("region type from side masks") {
  using namespace sides;
  CHECK(region_type_from_sides(0) == RegionType::kInterior);
  CHECK(region_type_from_sides(kLeft) == RegionType::kOneSide);
  CHECK(region_type_from_sides(kTop | kLeft) == RegionType::kAdjacentSides);
  CHECK(region_type_from_sides(kTop | kBottom) == RegionType::kOppositeSides);
  CHECK(region_type_from_sides(kTop | kBottom | kRight) ==
        RegionType::kThreeSides);
  CHECK(region_type_from_sides(15) == RegionType::kAllSides);
}

TEST_CASE("fill-in examples") {
  const GridGraph g(3, 3);
  const VertexSet centre = cells(g, {{1, 1}});
  CHECK(fill_in(g, centre).filled == centre);

  const VertexSet middle = cells(g, {{1, 0}, {1, 1}, {1, 2}});
  const FilledRegion f = fill_in(g, middle);
  CHECK(f.filled == cells(g, {{1, 0}, {1, 1}, {1, 2}, {2, 0}, {2, 1}, {2, 2}}));

  const GridGraph g5(5, 5);
  const VertexSet ring = cells(g5, {{1, 1}, {1, 2}, {1, 3}, {2, 1}, {2, 3},
                                    {3, 1}, {3, 2}, {3, 3}});
  VertexSet expected = ring;
  expected.insert(g5.vertex(2, 2));
  CHECK(fill_in(g5, ring).filled == expected);
  CHECK(fill_in(g5, ring).boundary.size() == 12);

  CHECK_THROWS_AS(fill_in(g, VertexSet::all(9)), ConfigError);
}

TEST_CASE("fill-in invariants on random connected sets") {
  std::mt19937_64 gen(11);
  for (int rows = 2; rows <= 6; ++rows) {
    for (int cols = 2; cols <= 6; ++cols) {
      const GridGraph g(rows, cols);
      for (int trial = 0; trial < 60; ++trial) {
        const int size = 1 + static_cast<int>(gen() % g.num_vertices());
        const VertexSet s = testing::random_connected_set(g, gen, size);
        if (classify_region(g, s) == RegionType::kAllSides) continue;
        const FilledRegion f = fill_in(g, s);
        CHECK(s.is_subset_of(f.filled));
        CHECK(is_induced_connected(g, f.filled));
        CHECK(is_induced_connected(g, f.filled.complement()));
        const auto bs = boundary(g, s);
        for (EdgeId e : f.boundary) {
          CHECK(std::find(bs.begin(), bs.end(), e) != bs.end());
        }
        // Filling is idempotent.
        CHECK(fill_in(g, f.filled).filled == f.filled);
      }
    }
  }
}

TEST_CASE("enumeration examples") {
  const GridGraph g(4, 4);
  const auto tally = tally_regions(enumerate_filled_regions(g, 8));
  CHECK(tally.at({4, TypeClass::kInterior}).count == 4);
  CHECK(tally.at({2, TypeClass::kPerimeter}).count == 4);
  CHECK(tally.count({3, TypeClass::kInterior}) == 0);
  CHECK(tally.count({2, TypeClass::kInterior}) == 0);
}

TEST_CASE("enumeration matches the subset definition") {
  for (auto [rows, cols, budget] :
       {std::tuple{2, 2, 14}, {3, 3, 14}, {3, 5, 14}, {4, 4, 14}, {4, 5, 9}}) {
    const GridGraph g(rows, cols);
    CAPTURE(rows);
    CAPTURE(cols);
    const auto regions = enumerate_filled_regions(g, budget);
    std::set<std::vector<Vertex>> found;
    for (const auto& r : regions) {
      CHECK(found.insert(r.filled.members()).second);
      CHECK(r.boundary == boundary(g, r.filled));
      CHECK(r.type == classify_region(g, r.filled));
    }
    CHECK(found == filled_regions_by_subsets(g, budget));
  }
}

TEST_CASE("regions correspond to simple dual cycles") {
  const GridGraph g(5, 6);
  const DualGraph d(g);
  for (const auto& r : enumerate_filled_regions(g, 10)) {
    bool through_outer = false;
    CHECK(is_simple_dual_cycle(d, r.boundary, through_outer));
    CHECK(through_outer == r.through_outer);
    CHECK(through_outer == (r.type != RegionType::kInterior));
  }
}

TEST_CASE("parallel and serial enumeration agree") {
  const GridGraph g(6, 6);
  const DualGraph d(g);
  const auto a = enumerate_dual_cycles(d, 10);
  const auto b = enumerate_dual_cycles_serial(d, 10);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].edges == b[i].edges);
  const auto ra = enumerate_filled_regions(g, 10);
  const auto rb = enumerate_filled_regions_serial(g, 10);
  REQUIRE(ra.size() == rb.size());
  for (std::size_t i = 0; i < ra.size(); ++i) CHECK(ra[i].filled == rb[i].filled);
}

TEST_CASE("area and count bounds") {
  for (int n : {5, 6}) {
    const GridGraph g(n, n);
    const double big_n = g.num_vertices();
    const auto regions = enumerate_filled_regions(g, 12);
    for (const auto& r : regions) {
      const double i = static_cast<double>(r.boundary.size());
      if (r.type == RegionType::kInterior) {
        CHECK(r.filled.size() <= i * i / 16.0);
      } else {
        CHECK(r.filled.size() <= i * i);
      }
    }
    for (const auto& [key, t] : tally_regions(regions)) {
      const int i = key.first;
      if (key.second == TypeClass::kInterior) {
        CHECK(i % 2 == 0);
        CHECK(i >= 4);
        CHECK(t.count <= big_n * 2.0 * std::pow(3.0, i - 2) / i);
      } else {
        CHECK(t.count <= 2.0 * std::sqrt(big_n) * std::pow(3.0, i - 2));
      }
    }
  }
}

TEST_CASE("enumeration limits") {
  CHECK_THROWS_AS(enumerate_filled_regions(build_grid(5, 5), 15), CapacityError);
  CHECK_THROWS_AS(enumerate_filled_regions(build_grid(9, 5), 8), CapacityError);
  CHECK_THROWS_AS(enumerate_filled_regions(build_grid(1, 5), 8), ConfigError);
}

}  // TEST_SUITE
