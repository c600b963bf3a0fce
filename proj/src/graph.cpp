#include "approxrec/graph.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <string>

#include "approxrec/errors.hpp"

namespace approxrec {

VertexSet::VertexSet(int num_vertices, std::span<const Vertex> members)
    : member_(num_vertices, 0) {
  for (Vertex v : members) {
    if (v < 0 || v >= num_vertices) {
      throw ConfigError("vertex " + std::to_string(v) + " out of range");
    }
    member_[v] = 1;
  }
}

VertexSet VertexSet::all(int num_vertices) {
  VertexSet s(num_vertices);
  std::fill(s.member_.begin(), s.member_.end(), 1);
  return s;
}

int VertexSet::size() const {
  return static_cast<int>(std::count(member_.begin(), member_.end(), 1));
}

std::vector<Vertex> VertexSet::members() const {
  std::vector<Vertex> out;
  for (int v = 0; v < universe_size(); ++v) {
    if (member_[v]) out.push_back(v);
  }
  return out;
}

VertexSet VertexSet::complement() const {
  VertexSet c(universe_size());
  for (int v = 0; v < universe_size(); ++v) c.member_[v] = member_[v] ? 0 : 1;
  return c;
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
  for (int v = 0; v < universe_size(); ++v) {
    if (member_[v] && !other.member_[v]) return false;
  }
  return true;
}

Graph::Graph(int num_vertices, std::vector<Edge> edges)
    : num_vertices_(num_vertices), edges_(std::move(edges)) {
  if (num_vertices < 0) throw ConfigError("negative vertex count");
  std::set<std::pair<Vertex, Vertex>> seen;
  std::vector<int> deg(num_vertices, 0);
  for (const Edge& e : edges_) {
    if (e.u < 0 || e.v < 0 || e.u >= num_vertices || e.v >= num_vertices) {
      throw ConfigError("edge endpoint out of range");
    }
    if (e.u == e.v) throw ConfigError("self-loop at " + std::to_string(e.u));
    if (!seen.emplace(std::min(e.u, e.v), std::max(e.u, e.v)).second) {
      throw ConfigError("parallel edge " + std::to_string(e.u) + "-" +
                        std::to_string(e.v));
    }
    ++deg[e.u];
    ++deg[e.v];
  }
  offsets_.assign(num_vertices + 1, 0);
  for (int v = 0; v < num_vertices; ++v) offsets_[v + 1] = offsets_[v] + deg[v];
  incidences_.resize(offsets_.back());
  std::vector<int> fill(offsets_.begin(), offsets_.end() - 1);
  for (EdgeId id = 0; id < num_edges(); ++id) {
    const Edge& e = edges_[id];
    incidences_[fill[e.u]++] = {e.v, id};
    incidences_[fill[e.v]++] = {e.u, id};
  }
}

std::optional<int> Graph::regular_degree() const {
  if (num_vertices_ == 0) return std::nullopt;
  const int d = degree(0);
  for (Vertex v = 1; v < num_vertices_; ++v) {
    if (degree(v) != d) return std::nullopt;
  }
  return d;
}

bool Graph::is_connected() const {
  if (num_vertices_ <= 1) return true;
  return is_induced_connected(*this, VertexSet::all(num_vertices_));
}

std::optional<EdgeId> Graph::find_edge(Vertex u, Vertex v) const {
  for (const Incidence& inc : neighbors(u)) {
    if (inc.neighbor == v) return inc.edge;
  }
  return std::nullopt;
}

namespace {

std::vector<Edge> grid_edges(int rows, int cols) {
  if (rows < 1 || cols < 1) {
    throw ConfigError("grid dimensions must be positive, got " +
                      std::to_string(rows) + "x" + std::to_string(cols));
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(rows) * (cols - 1) +
                static_cast<std::size_t>(cols) * (rows - 1));
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const Vertex v = r * cols + c;
      if (c + 1 < cols) edges.push_back({v, v + 1});
      if (r + 1 < rows) edges.push_back({v, v + cols});
    }
  }
  return edges;
}

}  // namespace

GridGraph::GridGraph(int rows, int cols)
    : Graph(rows * std::max(cols, 0), grid_edges(rows, cols)),
      rows_(rows),
      cols_(cols),
      right_(num_vertices(), -1),
      down_(num_vertices(), -1) {
  for (EdgeId id = 0; id < num_edges(); ++id) {
    const Edge& e = edge(id);
    if (e.v == e.u + 1) {
      right_[e.u] = id;
    } else {
      down_[e.u] = id;
    }
  }
}

unsigned GridGraph::side_mask(Vertex v) const {
  const int r = row(v);
  const int c = col(v);
  unsigned mask = 0;
  if (r == 0) mask |= sides::kTop;
  if (r == rows_ - 1) mask |= sides::kBottom;
  if (c == 0) mask |= sides::kLeft;
  if (c == cols_ - 1) mask |= sides::kRight;
  return mask;
}

int GridGraph::perimeter_edge_count() const {
  if (rows_ < 2 || cols_ < 2) return num_edges();
  return 2 * (rows_ - 1) + 2 * (cols_ - 1);
}

GridGraph build_grid(int rows, int cols) { return GridGraph(rows, cols); }

DualGraph::DualGraph(const GridGraph& grid)
    : num_cells_(std::max(grid.rows() - 1, 0) * std::max(grid.cols() - 1, 0)),
      ends_(grid.num_edges()),
      adj_(num_cells_ + 1) {
  const int cell_cols = grid.cols() - 1;
  const int cell_rows = grid.rows() - 1;
  auto cell = [&](int i, int j) {
    if (i < 0 || j < 0 || i >= cell_rows || j >= cell_cols) return num_cells_;
    return i * cell_cols + j;
  };
  for (EdgeId id = 0; id < grid.num_edges(); ++id) {
    const Edge& e = grid.edge(id);
    const int r = grid.row(e.u);
    const int c = grid.col(e.u);
    std::pair<int, int> faces;
    if (e.v == e.u + 1) {
      faces = {cell(r - 1, c), cell(r, c)};  // above, below
    } else {
      faces = {cell(r, c - 1), cell(r, c)};  // left, right
    }
    ends_[id] = faces;
    adj_[faces.first].push_back({faces.second, id});
    adj_[faces.second].push_back({faces.first, id});
  }
}

std::vector<EdgeId> boundary(const Graph& g, const VertexSet& s) {
  if (s.universe_size() != g.num_vertices()) {
    throw ConfigError("vertex set does not match graph size");
  }
  std::vector<EdgeId> out;
  for (EdgeId id = 0; id < g.num_edges(); ++id) {
    const Edge& e = g.edge(id);
    if (s.contains(e.u) != s.contains(e.v)) out.push_back(id);
  }
  return out;
}

std::vector<std::vector<Vertex>> induced_components(const Graph& g,
                                                    const VertexSet& s) {
  std::vector<std::vector<Vertex>> comps;
  std::vector<std::uint8_t> seen(g.num_vertices(), 0);
  std::vector<Vertex> stack;
  for (Vertex start = 0; start < g.num_vertices(); ++start) {
    if (!s.contains(start) || seen[start]) continue;
    std::vector<Vertex> comp;
    stack.push_back(start);
    seen[start] = 1;
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (const Incidence& inc : g.neighbors(v)) {
        if (s.contains(inc.neighbor) && !seen[inc.neighbor]) {
          seen[inc.neighbor] = 1;
          stack.push_back(inc.neighbor);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

bool is_induced_connected(const Graph& g, const VertexSet& s) {
  return induced_components(g, s).size() <= 1;
}

Graph complete_graph(int n) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v});
  }
  return Graph(n, std::move(edges));
}

Graph cycle_graph(int n) {
  if (n < 3) throw ConfigError("cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) edges.push_back({u, (u + 1) % n});
  return Graph(n, std::move(edges));
}

Graph random_regular_graph(int n, int d, std::uint64_t seed) {
  if (n <= d || d < 1 || (static_cast<long>(n) * d) % 2 != 0) {
    throw ConfigError("no simple " + std::to_string(d) + "-regular graph on " +
                      std::to_string(n) + " vertices");
  }
  std::mt19937_64 gen(seed);
  std::vector<Vertex> stubs;
  for (Vertex v = 0; v < n; ++v) stubs.insert(stubs.end(), d, v);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::shuffle(stubs.begin(), stubs.end(), gen);
    std::set<std::pair<Vertex, Vertex>> seen;
    std::vector<Edge> edges;
    bool simple = true;
    for (std::size_t i = 0; i < stubs.size(); i += 2) {
      const Vertex a = std::min(stubs[i], stubs[i + 1]);
      const Vertex b = std::max(stubs[i], stubs[i + 1]);
      if (a == b || !seen.emplace(a, b).second) {
        simple = false;
        break;
      }
      edges.push_back({a, b});
    }
    if (!simple) continue;
    std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
      return std::pair(x.u, x.v) < std::pair(y.u, y.v);
    });
    Graph g(n, std::move(edges));
    if (g.is_connected()) return g;
  }
  throw ConfigError("failed to sample a connected regular graph");
}

void write_graph(std::ostream& out, const Graph& g) {
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

void write_graph(std::ostream& out, const GridGraph& g) {
  out << "grid " << g.rows() << ' ' << g.cols() << '\n';
}

std::variant<GridGraph, Graph> read_graph(std::istream& in) {
  std::string head;
  if (!(in >> head)) throw ConfigError("empty graph file");
  if (head == "grid") {
    int rows = 0;
    int cols = 0;
    if (!(in >> rows >> cols)) throw ConfigError("malformed grid header");
    return build_grid(rows, cols);
  }
  int n = 0;
  int m = 0;
  try {
    n = std::stoi(head);
  } catch (const std::exception&) {
    throw ConfigError("malformed graph header '" + head + "'");
  }
  if (!(in >> m) || m < 0) throw ConfigError("malformed graph header");
  std::vector<Edge> edges(m);
  for (Edge& e : edges) {
    if (!(in >> e.u >> e.v)) throw ConfigError("truncated edge list");
  }
  return Graph(n, std::move(edges));
}

}  // namespace approxrec
