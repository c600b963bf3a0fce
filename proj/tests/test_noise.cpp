#include <doctest.h>

#include <cmath>
#include <sstream>

#include "approxrec/errors.hpp"
#include "approxrec/noise.hpp"
#include "support.hpp"

using namespace approxrec;

TEST_SUITE("noise") {

TEST_CASE("labeling validation") {
  CHECK_THROWS_AS(Labeling({1, 0, -1}), ConfigError);
  const Labeling y({1, -1, 1});
  CHECK(y.negated() == Labeling({-1, 1, -1}));
  CHECK(Labeling::constant(3, -1) == Labeling({-1, -1, -1}));
}

TEST_CASE("noiseless sampling") {
  const GridGraph g(4, 5);
  const Labeling truth = random_truth(g.num_vertices(), 3);
  const Observations obs = sample_observations(g, truth, {0.0, 0.0, {}}, 9);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    CHECK(obs.signs.edge[e] == truth[ed.u] * truth[ed.v]);
  }
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    CHECK(obs.signs.node[v] == truth[v]);
  }
  CHECK(obs.num_bad_edges() == 0);
  CHECK(obs.num_bad_nodes() == 0);
}

TEST_CASE("good and bad elements under consistent flips") {
  const GridGraph g(6, 6);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Labeling truth = random_truth(g.num_vertices(), seed);
    const Observations obs =
        sample_observations(g, truth, {0.2, 0.3, {}}, seed);
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      const Edge& ed = g.edge(e);
      const int product = obs.signs.edge[e] * truth[ed.u] * truth[ed.v];
      CHECK(product == (obs.bad_edges[e] ? -1 : 1));
    }
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      CHECK(obs.signs.node[v] * truth[v] == (obs.bad_nodes[v] ? -1 : 1));
    }
  }
}

TEST_CASE("bad-element frequencies") {
  const GridGraph g(20, 20);
  const Labeling truth = Labeling::constant(400, 1);
  const double p = 0.07;
  const double q = 0.3;
  long bad_edges = 0;
  long bad_nodes = 0;
  const int samples = 40;
  for (int s = 0; s < samples; ++s) {
    const Observations obs = sample_observations(g, truth, {p, q, {}}, s);
    bad_edges += obs.num_bad_edges();
    bad_nodes += obs.num_bad_nodes();
  }
  const double m = 760.0 * samples;
  const double n = 400.0 * samples;
  CHECK(std::abs(bad_edges - p * m) <= 3 * std::sqrt(m * p * (1 - p)));
  CHECK(std::abs(bad_nodes - q * n) <= 3 * std::sqrt(n * q * (1 - q)));

  // p = 1/2: mean 380 bad edges.
  long half = 0;
  for (int s = 0; s < samples; ++s) {
    half += sample_observations(g, truth, {0.5, 0.0, {}}, s).num_bad_edges();
  }
  CHECK(std::abs(half - 380.0 * samples) <= 3 * std::sqrt(m * 0.25));
}

TEST_CASE("sampling is deterministic") {
  const GridGraph g(5, 5);
  const Labeling truth = random_truth(25, 1);
  const Observations a = sample_observations(g, truth, {0.1, 0.2, {}}, 42);
  const Observations b = sample_observations(g, truth, {0.1, 0.2, {}}, 42);
  CHECK(a.signs == b.signs);
  CHECK(a.bad_edges == b.bad_edges);
  const Observations c = sample_observations(g, truth, {0.1, 0.2, {}}, 43);
  CHECK_FALSE(a.bad_edges == c.bad_edges);
}

TEST_CASE("adversaries only relabel corrupted elements") {
  const GridGraph g(6, 6);
  const Labeling truth = random_truth(36, 4);
  // Tries to write +1 everywhere.
  const AdversaryRule greedy = [](const AdversaryContext&,
                                  SignedObservations& s) {
    std::fill(s.edge.begin(), s.edge.end(), 1);
    std::fill(s.node.begin(), s.node.end(), 1);
  };
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Observations flip =
        sample_observations(g, truth, {0.3, 0.3, {}}, seed);
    for (const AdversaryRule& rule : {greedy, random_label_adversary()}) {
      const Observations adv =
          sample_observations(g, truth, {0.3, 0.3, rule}, seed);
      CHECK(adv.bad_edges == flip.bad_edges);
      CHECK(adv.bad_nodes == flip.bad_nodes);
      for (EdgeId e = 0; e < g.num_edges(); ++e) {
        if (!adv.bad_edges[e]) CHECK(adv.signs.edge[e] == flip.signs.edge[e]);
      }
      for (Vertex v = 0; v < 36; ++v) {
        if (!adv.bad_nodes[v]) CHECK(adv.signs.node[v] == flip.signs.node[v]);
      }
    }
    const Observations g_adv =
        sample_observations(g, truth, {0.3, 0.3, greedy}, seed);
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      if (g_adv.bad_edges[e]) CHECK(g_adv.signs.edge[e] == 1);
    }
  }
}

TEST_CASE("sampling argument checks") {
  const GridGraph g(3, 3);
  const Labeling truth = Labeling::constant(9, 1);
  CHECK_THROWS_AS(sample_observations(g, truth, {0.6, 0.1, {}}, 1), ConfigError);
  CHECK_THROWS_AS(sample_observations(g, truth, {0.1, -0.1, {}}, 1),
                  ConfigError);
  CHECK_THROWS_AS(sample_observations(g, Labeling::constant(4, 1),
                                      {0.1, 0.1, {}}, 1),
                  ConfigError);
}

TEST_CASE("checkerboard truth") {
  const GridGraph g2(2, 2);
  const Labeling y = checkerboard_truth(g2, 5);
  CHECK(y[0] == 1);
  CHECK(y[3] == 1);
  const GridGraph g(7, 8);
  bool white_minus = false;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Labeling t = checkerboard_truth(g, seed);
    CHECK(t == checkerboard_truth(g, seed));
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      if (is_black(g, v)) CHECK(t[v] == 1);
      if (!is_black(g, v) && t[v] == -1) white_minus = true;
    }
  }
  CHECK(white_minus);
}

TEST_CASE("error metrics") {
  const Labeling truth = random_truth(9, 2);
  CHECK(hamming_error(truth, truth) == 0);
  CHECK(hamming_error(truth.negated(), truth) == 9);
  CHECK(sign_symmetric_error(truth.negated(), truth) == 0);
  Labeling two = truth;
  two.set(0, static_cast<std::int8_t>(-two[0]));
  two.set(5, static_cast<std::int8_t>(-two[5]));
  CHECK(hamming_error(two, truth) == 2);
  Labeling seven = two.negated();
  CHECK(hamming_error(seven, truth) == 7);
  CHECK(sign_symmetric_error(seven, truth) == 2);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Labeling pred = random_truth(9, s + 100);
    CHECK(hamming_error(pred, truth) + hamming_error(pred.negated(), truth) ==
          9);
  }
}

TEST_CASE("observation and labeling text round trip") {
  const GridGraph g(3, 4);
  const Labeling truth = random_truth(12, 8);
  const Observations obs = sample_observations(g, truth, {0.2, 0.2, {}}, 8);
  std::stringstream text;
  write_observations(text, g, obs.signs);
  CHECK(read_observations(text, g) == obs.signs);

  std::stringstream lab;
  write_labeling(lab, truth);
  CHECK(read_labeling(lab) == truth);
  std::stringstream bad_label("1 -1 2\n");
  CHECK_THROWS_AS(read_labeling(bad_label), ConfigError);
  std::stringstream partial("node 0 1\n");
  CHECK_THROWS_AS(read_observations(partial, g), ConfigError);
  std::stringstream non_edge("edge 0 5 1\n");
  CHECK_THROWS_AS(read_observations(non_edge, g), ConfigError);
}

}  // TEST_SUITE
