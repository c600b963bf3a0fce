#pragma once

#include <span>
#include <vector>

#include "approxrec/graph.hpp"
#include "approxrec/noise.hpp"

namespace approxrec {

struct InferenceLimits {
  int max_rows = 22;             // frontier sweeps for the MAP objectives
  int marginal_rows = 16;        // forward/backward marginals
  int exhaustive_vertices = 24;  // enumeration over sign classes
};

// Relative weight of node evidence to edge evidence in the MAP objective:
// log((1-q)/q) / log((1-p)/p).
struct GammaWeight {
  double value = 0.0;
};

// Requires 0 < p < 1/2 and 0 < q <= 1/2. p in {0, 1/2} or q = 0 throws
// DegenerateNoiseError.
GammaWeight gamma(double p, double q);

// sum over edges of X_uv * y_u * y_v.
long agreement_score(const Graph& g, std::span<const std::int8_t> edge_obs,
                     const Labeling& y);
// agreement_score + gamma * sum over vertices of X_v * y_v.
double map_objective(const Graph& g, const SignedObservations& obs,
                     const Labeling& y, double gamma);

struct FirstStageResult {
  Labeling labeling;
  long score = 0;
  bool certified = false;  // labeling is a proven global maximizer
};

// Exact maximizer of the edge agreement score by a frontier sweep with
// 2^rows states. Throws CapacityError above limits.max_rows.
FirstStageResult max_agreement_edges(const GridGraph& g,
                                     const SignedObservations& obs,
                                     const InferenceLimits& limits = {});

// Returns -first when sum_v X_v * first_v < 0, otherwise first.
Labeling majority_vote(const Labeling& first, const SignedObservations& obs);

// Edge-only maximization followed by the node majority vote.
Labeling two_step(const GridGraph& g, const SignedObservations& obs,
                  const InferenceLimits& limits = {});

struct MapResult {
  Labeling labeling;
  double score = 0.0;
};

// Exact maximizer of the full objective; ties within 1e-9 resolve as in
// max_agreement_edges.
MapResult map_full(const GridGraph& g, const SignedObservations& obs,
                   GammaWeight gamma, const InferenceLimits& limits = {});

// Posterior P(y_v = +1 | X) under a uniform prior.
class MarginalTable {
 public:
  MarginalTable() = default;
  // Throws ConfigError for entries outside [0, 1].
  explicit MarginalTable(std::vector<double> prob_plus);

  int size() const { return static_cast<int>(prob_plus_.size()); }
  double operator[](Vertex v) const { return prob_plus_[v]; }
  std::span<const double> values() const { return prob_plus_; }

 private:
  std::vector<double> prob_plus_;
};

// Exact marginals by forward/backward sweeps in the log domain.
// Requires 0 < p, q <= 1/2 and rows <= limits.marginal_rows.
MarginalTable marginals(const GridGraph& g, const SignedObservations& obs,
                        double p, double q, const InferenceLimits& limits = {});

// +1 where P(+1) >= 1/2.
Labeling marginal_predict(const MarginalTable& m);

// Exhaustive maximizer of the edge agreement score over 2^(N-1) sign
// classes, for graphs without grid structure.
FirstStageResult max_agreement_exhaustive(const Graph& g,
                                          const SignedObservations& obs,
                                          const InferenceLimits& limits = {});

}  // namespace approxrec
