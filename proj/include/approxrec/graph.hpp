#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace approxrec {

using Vertex = int;
using EdgeId = int;

struct Edge {
  Vertex u;
  Vertex v;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Incidence {
  Vertex neighbor;
  EdgeId edge;
};

// Membership mask over the vertices of a graph.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int num_vertices) : member_(num_vertices, 0) {}
  VertexSet(int num_vertices, std::span<const Vertex> members);

  static VertexSet all(int num_vertices);

  int universe_size() const { return static_cast<int>(member_.size()); }
  bool contains(Vertex v) const { return member_[v] != 0; }
  void insert(Vertex v) { member_[v] = 1; }
  void erase(Vertex v) { member_[v] = 0; }
  int size() const;
  bool empty() const { return size() == 0; }
  std::vector<Vertex> members() const;
  VertexSet complement() const;
  bool is_subset_of(const VertexSet& other) const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<std::uint8_t> member_;
};

// Simple undirected graph with compressed adjacency.
class Graph {
 public:
  Graph() = default;
  // Throws ConfigError on self-loops, parallel edges or out-of-range ids.
  Graph(int num_vertices, std::vector<Edge> edges);

  int num_vertices() const { return num_vertices_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Incidence> neighbors(Vertex v) const {
    return {incidences_.data() + offsets_[v],
            incidences_.data() + offsets_[v + 1]};
  }
  int degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  // d when every vertex has degree d.
  std::optional<int> regular_degree() const;
  bool is_connected() const;
  std::optional<EdgeId> find_edge(Vertex u, Vertex v) const;

 private:
  int num_vertices_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> offsets_{0};
  std::vector<Incidence> incidences_;
};

namespace sides {
inline constexpr unsigned kTop = 1;
inline constexpr unsigned kBottom = 2;
inline constexpr unsigned kLeft = 4;
inline constexpr unsigned kRight = 8;
}  // namespace sides

// rows x cols grid, vertex id = row * cols + col from the top-left. Edges are
// numbered by visiting vertices in id order and emitting the right then the
// down adjacency of each.
class GridGraph : public Graph {
 public:
  GridGraph(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Vertex vertex(int row, int col) const { return row * cols_ + col; }
  int row(Vertex v) const { return v / cols_; }
  int col(Vertex v) const { return v % cols_; }
  // Edge to (row, col + 1), or -1.
  EdgeId right_edge(Vertex v) const { return right_[v]; }
  // Edge to (row + 1, col), or -1.
  EdgeId down_edge(Vertex v) const { return down_[v]; }
  // Perimeter sides the vertex lies on; corners lie on two.
  unsigned side_mask(Vertex v) const;
  int perimeter_edge_count() const;

 private:
  int rows_;
  int cols_;
  std::vector<EdgeId> right_;
  std::vector<EdgeId> down_;
};

GridGraph build_grid(int rows, int cols);

// Planar dual of a grid: one vertex per unit cell, (rows-1) x (cols-1) in
// row-major order, plus the outer face. Multi-edges to the outer face are
// kept, one dual edge per primal edge.
class DualGraph {
 public:
  explicit DualGraph(const GridGraph& grid);

  int num_cells() const { return num_cells_; }
  int num_vertices() const { return num_cells_ + 1; }
  int outer() const { return num_cells_; }
  int num_edges() const { return static_cast<int>(ends_.size()); }
  // Faces on either side of the given primal edge.
  std::pair<int, int> ends(EdgeId primal) const { return ends_[primal]; }
  std::span<const Incidence> neighbors(int face) const { return adj_[face]; }
  int degree(int face) const { return static_cast<int>(adj_[face].size()); }

 private:
  int num_cells_;
  std::vector<std::pair<int, int>> ends_;
  std::vector<std::vector<Incidence>> adj_;
};

std::vector<EdgeId> boundary(const Graph& g, const VertexSet& s);

// Connected components of the subgraph induced by `s`, each sorted, ordered
// by smallest member.
std::vector<std::vector<Vertex>> induced_components(const Graph& g,
                                                    const VertexSet& s);
bool is_induced_connected(const Graph& g, const VertexSet& s);

Graph complete_graph(int n);
Graph cycle_graph(int n);
// Uniform-ish random simple connected d-regular graph via the configuration
// model with rejection.
Graph random_regular_graph(int n, int d, std::uint64_t seed);

// Plain-text edge list: "N M" then M lines "u v"; grids write "grid R C".
void write_graph(std::ostream& out, const Graph& g);
void write_graph(std::ostream& out, const GridGraph& g);
std::variant<GridGraph, Graph> read_graph(std::istream& in);

}  // namespace approxrec
