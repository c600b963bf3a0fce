#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "approxrec/graph.hpp"
#include "approxrec/noise.hpp"

namespace testing {

using namespace approxrec;

inline VertexSet from_mask(int n, std::uint64_t mask) {
  VertexSet s(n);
  for (int v = 0; v < n; ++v) {
    if ((mask >> v) & 1) s.insert(v);
  }
  return s;
}

// Connected vertex set grown from a random seed vertex.
inline VertexSet random_connected_set(const Graph& g, std::mt19937_64& gen,
                                      int target) {
  std::uniform_int_distribution<int> pick(0, g.num_vertices() - 1);
  VertexSet s(g.num_vertices());
  std::vector<Vertex> members{pick(gen)};
  s.insert(members[0]);
  while (static_cast<int>(members.size()) < target) {
    std::vector<Vertex> frontier;
    for (Vertex v : members) {
      for (const Incidence& inc : g.neighbors(v)) {
        if (!s.contains(inc.neighbor)) frontier.push_back(inc.neighbor);
      }
    }
    if (frontier.empty()) break;
    const Vertex next =
        frontier[std::uniform_int_distribution<std::size_t>(
            0, frontier.size() - 1)(gen)];
    s.insert(next);
    members.push_back(next);
  }
  return s;
}

// Observation signs drawn uniformly, independent of any truth.
inline SignedObservations random_signs(const Graph& g, std::mt19937_64& gen) {
  std::bernoulli_distribution coin(0.5);
  SignedObservations obs;
  for (int e = 0; e < g.num_edges(); ++e) obs.edge.push_back(coin(gen) ? 1 : -1);
  for (int v = 0; v < g.num_vertices(); ++v) {
    obs.node.push_back(coin(gen) ? 1 : -1);
  }
  return obs;
}

}  // namespace testing
