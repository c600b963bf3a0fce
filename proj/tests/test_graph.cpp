#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "approxrec/errors.hpp"
#include "approxrec/graph.hpp"
#include "support.hpp"

using namespace approxrec;

TEST_SUITE("graph") {

TEST_CASE("grid sizes") {
  CHECK(build_grid(2, 2).num_vertices() == 4);
  CHECK(build_grid(2, 2).num_edges() == 4);
  CHECK(build_grid(3, 3).num_vertices() == 9);
  CHECK(build_grid(3, 3).num_edges() == 12);
  CHECK(build_grid(20, 20).num_vertices() == 400);
  CHECK(build_grid(20, 20).num_edges() == 760);
  CHECK_THROWS_AS(build_grid(0, 3), ConfigError);
  CHECK_THROWS_AS(build_grid(3, -1), ConfigError);
}

TEST_CASE("grid structure invariants") {
  for (int rows = 1; rows <= 7; ++rows) {
    for (int cols = 1; cols <= 7; ++cols) {
      const GridGraph g(rows, cols);
      CAPTURE(rows);
      CAPTURE(cols);
      CHECK(g.num_edges() == rows * (cols - 1) + cols * (rows - 1));
      if (rows >= 2 && cols >= 2) {
        int corners = 0;
        for (Vertex v = 0; v < g.num_vertices(); ++v) {
          CHECK(g.degree(v) >= 2);
          CHECK(g.degree(v) <= 4);
          corners += g.degree(v) == 2;
        }
        CHECK(corners == 4);
      }
      for (Vertex v = 0; v < g.num_vertices(); ++v) {
        CHECK(g.vertex(g.row(v), g.col(v)) == v);
        if (g.right_edge(v) >= 0) {
          CHECK(g.edge(g.right_edge(v)) == Edge{v, v + 1});
        }
        if (g.down_edge(v) >= 0) {
          CHECK(g.edge(g.down_edge(v)) == Edge{v, v + cols});
        }
      }
    }
  }
}

TEST_CASE("side masks") {
  const GridGraph g(3, 4);
  CHECK(g.side_mask(g.vertex(0, 0)) == (sides::kTop | sides::kLeft));
  CHECK(g.side_mask(g.vertex(2, 3)) == (sides::kBottom | sides::kRight));
  CHECK(g.side_mask(g.vertex(1, 1)) == 0);
  CHECK(g.side_mask(g.vertex(1, 3)) == sides::kRight);
}

TEST_CASE("dual graph") {
  for (auto [rows, cols] : {std::pair{2, 2}, {3, 5}, {6, 6}, {4, 7}}) {
    const GridGraph g(rows, cols);
    const DualGraph d(g);
    CHECK(d.num_cells() == (rows - 1) * (cols - 1));
    CHECK(d.num_edges() == g.num_edges());
    CHECK(d.degree(d.outer()) == g.perimeter_edge_count());
    int total = 0;
    for (int f = 0; f < d.num_vertices(); ++f) total += d.degree(f);
    CHECK(total == 2 * g.num_edges());
    for (int f = 0; f < d.num_cells(); ++f) CHECK(d.degree(f) == 4);
  }
  // The single cell of a 2x2 grid touches the outer face across every edge.
  const DualGraph d(build_grid(2, 2));
  for (EdgeId e = 0; e < 4; ++e) {
    const auto [a, b] = d.ends(e);
    CHECK(std::min(a, b) == 0);
    CHECK(std::max(a, b) == d.outer());
  }
}

TEST_CASE("boundary examples") {
  const GridGraph g(3, 3);
  CHECK(boundary(g, VertexSet(9, std::vector<Vertex>{4})).size() == 4);
  CHECK(boundary(g, VertexSet(9, std::vector<Vertex>{0})).size() == 2);
  CHECK(boundary(g, VertexSet::all(9)).empty());
}

TEST_CASE("boundary matches endpoint membership") {
  std::mt19937_64 gen(7);
  const GridGraph g(5, 6);
  for (int trial = 0; trial < 200; ++trial) {
    const VertexSet s = testing::from_mask(g.num_vertices(), gen());
    std::set<EdgeId> expected;
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      for (const Incidence& inc : g.neighbors(v)) {
        if (s.contains(v) && !s.contains(inc.neighbor)) {
          expected.insert(inc.edge);
        }
      }
    }
    const auto got = boundary(g, s);
    CHECK(std::set<EdgeId>(got.begin(), got.end()) == expected);
    CHECK(boundary(g, s.complement()) == got);
  }
}

TEST_CASE("induced components") {
  const GridGraph g(3, 3);
  // Two corners and the centre are pairwise non-adjacent.
  const VertexSet s(9, std::vector<Vertex>{0, 4, 8});
  const auto comps = induced_components(g, s);
  REQUIRE(comps.size() == 3);
  CHECK(comps[0] == std::vector<Vertex>{0});
  CHECK_FALSE(is_induced_connected(g, s));
  CHECK(is_induced_connected(g, VertexSet(9, std::vector<Vertex>{0, 1, 4})));
  CHECK(is_induced_connected(g, VertexSet(9)));
}

TEST_CASE("graph validation") {
  CHECK_THROWS_AS(Graph(3, {{0, 0}}), ConfigError);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), ConfigError);
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), ConfigError);
  CHECK_FALSE(Graph(4, {{0, 1}, {2, 3}}).is_connected());
  CHECK(cycle_graph(5).regular_degree() == 2);
  CHECK(complete_graph(5).regular_degree() == 4);
  CHECK_FALSE(build_grid(3, 3).regular_degree().has_value());
}

TEST_CASE("random regular graphs") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = random_regular_graph(14, 3, seed);
    CHECK(g.num_vertices() == 14);
    CHECK(g.num_edges() == 21);
    CHECK(g.regular_degree() == 3);
    CHECK(g.is_connected());
  }
  CHECK(random_regular_graph(14, 3, 5).edges().size() ==
        random_regular_graph(14, 3, 5).edges().size());
  const auto a = random_regular_graph(14, 3, 5);
  const auto b = random_regular_graph(14, 3, 5);
  CHECK(std::equal(a.edges().begin(), a.edges().end(), b.edges().begin()));
  CHECK_THROWS_AS(random_regular_graph(5, 3, 1), ConfigError);
}

TEST_CASE("graph text round trip") {
  std::stringstream grid_text;
  write_graph(grid_text, build_grid(4, 5));
  CHECK(grid_text.str() == "grid 4 5\n");
  const auto grid = read_graph(grid_text);
  REQUIRE(std::holds_alternative<GridGraph>(grid));
  CHECK(std::get<GridGraph>(grid).cols() == 5);

  const Graph g = random_regular_graph(10, 3, 2);
  std::stringstream text;
  write_graph(text, g);
  const auto back = read_graph(text);
  REQUIRE(std::holds_alternative<Graph>(back));
  const Graph& h = std::get<Graph>(back);
  CHECK(h.num_vertices() == 10);
  CHECK(std::equal(g.edges().begin(), g.edges().end(), h.edges().begin(),
                   h.edges().end()));

  std::stringstream bad("3 2\n0 1\n");
  CHECK_THROWS_AS(read_graph(bad), ConfigError);
}

}  // TEST_SUITE
