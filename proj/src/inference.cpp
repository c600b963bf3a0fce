#include "approxrec/inference.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "approxrec/errors.hpp"
#include "frontier.hpp"

namespace approxrec {

namespace {

constexpr double kTieTolerance = 1e-9;

void check_dimensions(const Graph& g, const SignedObservations& obs) {
  if (static_cast<int>(obs.edge.size()) != g.num_edges() ||
      static_cast<int>(obs.node.size()) != g.num_vertices()) {
    throw ConfigError("observations do not match the graph");
  }
}

void check_rows(const GridGraph& g, int cap, const char* what) {
  if (g.rows() > cap) {
    throw CapacityError(std::string(what) + ": " + std::to_string(g.rows()) +
                        " rows exceed the frontier cap of " +
                        std::to_string(cap));
  }
}

template <class T>
detail::MaxWorkspace<T>& workspace() {
  thread_local detail::MaxWorkspace<T> ws;
  return ws;
}

template <class T>
std::vector<std::int8_t> edge_argmax(const GridGraph& g,
                                     const SignedObservations& obs) {
  const auto w = detail::make_weights<T>(g, obs.edge, {}, T{1}, T{-1}, T{},
                                         T{});
  return detail::max_sweep<T>(g, w, T{}, workspace<T>()).labels;
}

}  // namespace

GammaWeight gamma(double p, double q) {
  if (!(p >= 0.0 && p <= 0.5) || !(q >= 0.0 && q <= 0.5)) {
    throw ConfigError("noise probabilities must lie in [0, 1/2]");
  }
  if (p == 0.0 || p == 0.5) {
    throw DegenerateNoiseError(
        "gamma is undefined for p in {0, 1/2}; use the edge-only or "
        "hard-constraint formulation");
  }
  if (q == 0.0) {
    throw DegenerateNoiseError(
        "gamma is unbounded for q = 0; node observations are hard constraints");
  }
  return {std::log((1.0 - q) / q) / std::log((1.0 - p) / p)};
}

long agreement_score(const Graph& g, std::span<const std::int8_t> edge_obs,
                     const Labeling& y) {
  long score = 0;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    score += edge_obs[e] * y[ed.u] * y[ed.v];
  }
  return score;
}

double map_objective(const Graph& g, const SignedObservations& obs,
                     const Labeling& y, double gamma) {
  long node = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) node += obs.node[v] * y[v];
  return static_cast<double>(agreement_score(g, obs.edge, y)) + gamma * node;
}

FirstStageResult max_agreement_edges(const GridGraph& g,
                                     const SignedObservations& obs,
                                     const InferenceLimits& limits) {
  check_dimensions(g, obs);
  check_rows(g, limits.max_rows, "edge-agreement maximization");
  // Scores are bounded by |E| in magnitude.
  auto labels = g.num_edges() < std::numeric_limits<std::int16_t>::max() / 2
                    ? edge_argmax<std::int16_t>(g, obs)
                    : edge_argmax<std::int32_t>(g, obs);
  FirstStageResult out;
  out.labeling = Labeling(std::move(labels));
  out.score = agreement_score(g, obs.edge, out.labeling);
  out.certified = true;
  return out;
}

Labeling majority_vote(const Labeling& first, const SignedObservations& obs) {
  if (static_cast<int>(obs.node.size()) != first.size()) {
    throw ConfigError("node observations do not match the labeling");
  }
  long vote = 0;
  for (Vertex v = 0; v < first.size(); ++v) vote += obs.node[v] * first[v];
  return vote < 0 ? first.negated() : first;
}

Labeling two_step(const GridGraph& g, const SignedObservations& obs,
                  const InferenceLimits& limits) {
  return majority_vote(max_agreement_edges(g, obs, limits).labeling, obs);
}

MapResult map_full(const GridGraph& g, const SignedObservations& obs,
                   GammaWeight gamma, const InferenceLimits& limits) {
  check_dimensions(g, obs);
  check_rows(g, limits.max_rows, "full MAP");
  if (!(gamma.value >= 0.0) || !std::isfinite(gamma.value)) {
    throw ConfigError("gamma must be finite and non-negative");
  }
  const auto w = detail::make_weights<double>(g, obs.edge, obs.node, 1.0, -1.0,
                                              gamma.value, -gamma.value);
  auto sweep =
      detail::max_sweep<double>(g, w, kTieTolerance, workspace<double>());
  MapResult out;
  out.labeling = Labeling(std::move(sweep.labels));
  out.score = map_objective(g, obs, out.labeling, gamma.value);
  return out;
}

MarginalTable::MarginalTable(std::vector<double> prob_plus)
    : prob_plus_(std::move(prob_plus)) {
  for (double x : prob_plus_) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw ConfigError("marginal probabilities must lie in [0, 1]");
    }
  }
}

namespace detail {

namespace {

// Inverse of the forward butterfly: beta before vertex (r, c) from beta
// after it, pairing states that differ in the left neighbour's bit.
void backward_butterfly(double* beta, std::size_t states, int r,
                        const CellWeights<double>& w) {
  const std::size_t bit = std::size_t{1} << r;
  const std::size_t half = r > 0 ? bit >> 1 : 1;
  const std::size_t runs = r > 0 ? 2 : 1;
  for (std::size_t base = 0; base < states; base += 2 * bit) {
    for (std::size_t u = 0; u < runs; ++u) {
      double* a = beta + base + u * half;
      double* b = a + bit;
      const double up0 = r == 0 ? 0.0 : (u == 0 ? w.up_same : w.up_diff);
      const double up1 = r == 0 ? 0.0 : (u == 1 ? w.up_same : w.up_diff);
      const double add0 = up0 + w.node_minus;
      const double add1 = up1 + w.node_plus;
      for (std::size_t j = 0; j < half; ++j) {
        const double to0 = a[j] + add0;
        const double to1 = b[j] + add1;
        if (w.has_left) {
          a[j] = LogSumExp::combine(to0 + w.left_same, to1 + w.left_diff);
          b[j] = LogSumExp::combine(to0 + w.left_diff, to1 + w.left_same);
        } else {
          a[j] = b[j] = LogSumExp::combine(to0, to1);
        }
      }
    }
  }
}

}  // namespace

std::vector<double> log_odds_sweep(const GridGraph& g,
                                   const std::vector<CellWeights<double>>& w) {
  const int rows = g.rows();
  const int cols = g.cols();
  const std::size_t states = std::size_t{1} << rows;
  std::vector<double> checkpoints(states * cols);
  std::vector<double> alpha(states, 0.0);
  for (int c = 0; c < cols; ++c) {
    std::copy(alpha.begin(), alpha.end(), checkpoints.begin() + states * c);
    for (int r = 0; r < rows; ++r) {
      butterfly<double, LogSumExp>(alpha.data(), nullptr, 0, states, r,
                                   w[g.vertex(r, c)]);
    }
  }

  std::vector<double> log_odds(g.num_vertices());
  std::vector<double> column(states * rows);  // alpha after each row
  std::vector<double> beta(states, 0.0);
  for (int c = cols - 1; c >= 0; --c) {
    const double* prev = checkpoints.data() + states * c;
    for (int r = 0; r < rows; ++r) {
      double* cur = column.data() + states * r;
      std::copy(prev, prev + states, cur);
      butterfly<double, LogSumExp>(cur, nullptr, 0, states, r,
                                   w[g.vertex(r, c)]);
      prev = cur;
    }
    for (int r = rows - 1; r >= 0; --r) {
      const Vertex v = g.vertex(r, c);
      const double* a = column.data() + states * r;
      const std::size_t bit = std::size_t{1} << r;
      double peak = -std::numeric_limits<double>::infinity();
      for (std::size_t s = 0; s < states; ++s) {
        peak = std::max(peak, a[s] + beta[s]);
      }
      double plus = 0.0;
      double minus = 0.0;
      for (std::size_t s = 0; s < states; ++s) {
        const double term = std::exp(a[s] + beta[s] - peak);
        (s & bit ? plus : minus) += term;
      }
      log_odds[v] = std::log(plus) - std::log(minus);
      backward_butterfly(beta.data(), states, r, w[v]);
    }
  }
  return log_odds;
}

}  // namespace detail

MarginalTable marginals(const GridGraph& g, const SignedObservations& obs,
                        double p, double q, const InferenceLimits& limits) {
  check_dimensions(g, obs);
  check_rows(g, limits.marginal_rows, "marginal inference");
  if (!(p > 0.0 && p <= 0.5) || !(q > 0.0 && q <= 0.5)) {
    throw DegenerateNoiseError("marginals need 0 < p, q <= 1/2");
  }
  const auto w = detail::make_weights<double>(
      g, obs.edge, obs.node, std::log1p(-p), std::log(p), std::log1p(-q),
      std::log(q));
  const auto log_odds = detail::log_odds_sweep(g, w);
  std::vector<double> prob(log_odds.size());
  for (std::size_t v = 0; v < prob.size(); ++v) {
    prob[v] = 1.0 / (1.0 + std::exp(-log_odds[v]));
  }
  return MarginalTable(std::move(prob));
}

Labeling marginal_predict(const MarginalTable& m) {
  std::vector<std::int8_t> y(m.size());
  for (int v = 0; v < m.size(); ++v) y[v] = m[v] >= 0.5 ? 1 : -1;
  return Labeling(std::move(y));
}

FirstStageResult max_agreement_exhaustive(const Graph& g,
                                          const SignedObservations& obs,
                                          const InferenceLimits& limits) {
  check_dimensions(g, obs);
  const int n = g.num_vertices();
  if (n > limits.exhaustive_vertices || n > 62) {
    throw CapacityError("exhaustive search over " + std::to_string(n) +
                        " vertices exceeds cap " +
                        std::to_string(limits.exhaustive_vertices));
  }
  std::vector<std::int8_t> y(n, 1);
  long score = 0;
  for (EdgeId e = 0; e < g.num_edges(); ++e) score += obs.edge[e];
  long best = score;
  std::vector<std::int8_t> best_y = y;
  // Gray-code walk over the first n-1 vertices; the last stays +1.
  const std::uint64_t classes = n == 0 ? 1 : std::uint64_t{1} << (n - 1);
  for (std::uint64_t i = 1; i < classes; ++i) {
    const Vertex v = std::countr_zero(i);
    long local = 0;
    for (const Incidence& inc : g.neighbors(v)) {
      local += obs.edge[inc.edge] * y[inc.neighbor];
    }
    score -= 2 * y[v] * local;
    y[v] = static_cast<std::int8_t>(-y[v]);
    if (score > best) {
      best = score;
      best_y = y;
    }
  }
  FirstStageResult out;
  out.labeling = Labeling(std::move(best_y));
  out.score = best;
  out.certified = true;
  return out;
}

}  // namespace approxrec
