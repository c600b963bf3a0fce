#include "approxrec/noise.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>

#include "approxrec/errors.hpp"
#include "approxrec/rng.hpp"

namespace approxrec {

Labeling::Labeling(std::vector<std::int8_t> values) : values_(std::move(values)) {
  for (std::int8_t x : values_) {
    if (x != 1 && x != -1) throw ConfigError("labels must be +1 or -1");
  }
}

Labeling Labeling::constant(int n, std::int8_t value) {
  return Labeling(std::vector<std::int8_t>(n, value));
}

void Labeling::set(Vertex v, std::int8_t value) {
  if (value != 1 && value != -1) throw ConfigError("labels must be +1 or -1");
  values_[v] = value;
}

Labeling Labeling::negated() const {
  Labeling out = *this;
  for (auto& x : out.values_) x = static_cast<std::int8_t>(-x);
  return out;
}

int Observations::num_bad_edges() const {
  return static_cast<int>(std::count(bad_edges.begin(), bad_edges.end(), 1));
}

int Observations::num_bad_nodes() const {
  return static_cast<int>(std::count(bad_nodes.begin(), bad_nodes.end(), 1));
}

AdversaryRule random_label_adversary() {
  return [](const AdversaryContext& ctx, SignedObservations& signs) {
    const CounterRng rng(ctx.seed, streams::kAdversary);
    const auto n = static_cast<std::uint64_t>(ctx.graph.num_vertices());
    for (std::size_t e = 0; e < signs.edge.size(); ++e) {
      if (ctx.bad_edges[e]) signs.edge[e] = (rng.bits(n + e) & 1) ? 1 : -1;
    }
    for (std::size_t v = 0; v < signs.node.size(); ++v) {
      if (ctx.bad_nodes[v]) signs.node[v] = (rng.bits(v) & 1) ? 1 : -1;
    }
  };
}

namespace {

void check_probability(double x, const char* name) {
  if (!(x >= 0.0 && x <= 0.5)) {
    throw ConfigError(std::string(name) + " must lie in [0, 1/2]");
  }
}

}  // namespace

Observations sample_observations(const Graph& g, const Labeling& truth,
                                 const NoiseParams& params,
                                 std::uint64_t seed) {
  if (truth.size() != g.num_vertices()) {
    throw ConfigError("ground truth has " + std::to_string(truth.size()) +
                      " labels for " + std::to_string(g.num_vertices()) +
                      " vertices");
  }
  check_probability(params.p, "edge noise p");
  check_probability(params.q, "node noise q");

  const CounterRng edge_rng(seed, streams::kBadEdge);
  const CounterRng node_rng(seed, streams::kBadNode);
  Observations obs;
  obs.bad_edges.resize(g.num_edges());
  obs.bad_nodes.resize(g.num_vertices());
  obs.signs.edge.resize(g.num_edges());
  obs.signs.node.resize(g.num_vertices());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    const bool bad = edge_rng.bernoulli(static_cast<std::uint64_t>(e), params.p);
    const auto consistent = static_cast<std::int8_t>(truth[ed.u] * truth[ed.v]);
    obs.bad_edges[e] = bad ? 1 : 0;
    obs.signs.edge[e] = static_cast<std::int8_t>(bad ? -consistent : consistent);
  }
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    const bool bad = node_rng.bernoulli(static_cast<std::uint64_t>(v), params.q);
    obs.bad_nodes[v] = bad ? 1 : 0;
    obs.signs.node[v] = static_cast<std::int8_t>(bad ? -truth[v] : truth[v]);
  }

  if (params.adversary) {
    SignedObservations chosen = obs.signs;
    params.adversary(
        AdversaryContext{g, truth, obs.bad_edges, obs.bad_nodes, seed}, chosen);
    if (chosen.edge.size() != obs.signs.edge.size() ||
        chosen.node.size() != obs.signs.node.size()) {
      throw ConfigError("adversary changed observation dimensions");
    }
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      if (obs.bad_edges[e]) {
        obs.signs.edge[e] = chosen.edge[e] >= 0 ? 1 : -1;
      }
    }
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      if (obs.bad_nodes[v]) {
        obs.signs.node[v] = chosen.node[v] >= 0 ? 1 : -1;
      }
    }
  }
  return obs;
}

Labeling checkerboard_truth(const GridGraph& g, std::uint64_t seed) {
  const CounterRng rng(seed, streams::kTruth);
  std::vector<std::int8_t> y(g.num_vertices(), 1);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (!is_black(g, v)) y[v] = (rng.bits(v) & 1) ? 1 : -1;
  }
  return Labeling(std::move(y));
}

Labeling random_truth(int n, std::uint64_t seed) {
  const CounterRng rng(seed, streams::kTruth);
  std::vector<std::int8_t> y(n);
  for (int v = 0; v < n; ++v) y[v] = (rng.bits(v) & 1) ? 1 : -1;
  return Labeling(std::move(y));
}

int hamming_error(const Labeling& pred, const Labeling& truth) {
  if (pred.size() != truth.size()) {
    throw ConfigError("labelings differ in length");
  }
  int err = 0;
  for (int v = 0; v < pred.size(); ++v) err += pred[v] != truth[v];
  return err;
}

int sign_symmetric_error(const Labeling& pred, const Labeling& truth) {
  const int h = hamming_error(pred, truth);
  return std::min(h, pred.size() - h);
}

void write_observations(std::ostream& out, const Graph& g,
                        const SignedObservations& obs) {
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    out << "node " << v << ' ' << int{obs.node[v]} << '\n';
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    out << "edge " << g.edge(e).u << ' ' << g.edge(e).v << ' '
        << int{obs.edge[e]} << '\n';
  }
}

SignedObservations read_observations(std::istream& in, const Graph& g) {
  SignedObservations obs{std::vector<std::int8_t>(g.num_edges(), 0),
                         std::vector<std::int8_t>(g.num_vertices(), 0)};
  auto sign = [](int x) {
    if (x != 1 && x != -1) throw ConfigError("observation must be +1 or -1");
    return static_cast<std::int8_t>(x);
  };
  std::string kind;
  while (in >> kind) {
    if (kind == "node") {
      int v = 0;
      int x = 0;
      if (!(in >> v >> x) || v < 0 || v >= g.num_vertices()) {
        throw ConfigError("malformed node observation");
      }
      obs.node[v] = sign(x);
    } else if (kind == "edge") {
      int u = 0;
      int v = 0;
      int x = 0;
      if (!(in >> u >> v >> x) || u < 0 || v < 0 || u >= g.num_vertices() ||
          v >= g.num_vertices()) {
        throw ConfigError("malformed edge observation");
      }
      const auto e = g.find_edge(u, v);
      if (!e) throw ConfigError("observation for a non-edge");
      obs.edge[*e] = sign(x);
    } else {
      throw ConfigError("unknown observation record '" + kind + "'");
    }
  }
  const auto missing = [](const std::vector<std::int8_t>& xs) {
    return std::find(xs.begin(), xs.end(), 0) != xs.end();
  };
  if (missing(obs.node) || missing(obs.edge)) {
    throw ConfigError("observation file does not cover every element");
  }
  return obs;
}

void write_labeling(std::ostream& out, const Labeling& y) {
  for (int v = 0; v < y.size(); ++v) out << int{y[v]} << '\n';
}

Labeling read_labeling(std::istream& in) {
  std::vector<std::int8_t> values;
  int x = 0;
  while (in >> x) {
    if (x != 1 && x != -1) {
      throw ConfigError("labels must be -1 or +1, got " + std::to_string(x));
    }
    values.push_back(static_cast<std::int8_t>(x));
  }
  if (!in.eof()) throw ConfigError("malformed labeling");
  return Labeling(std::move(values));
}

}  // namespace approxrec
