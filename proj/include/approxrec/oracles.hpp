#pragma once

#include <string>
#include <utility>

#include "approxrec/graph.hpp"
#include "approxrec/inference.hpp"
#include "approxrec/metrics.hpp"
#include "approxrec/noise.hpp"

namespace approxrec {

// Outcome of one oracle check.
struct OracleReport {
  std::string check;
  std::string instance;
  double oracle_value = 0.0;
  double candidate_value = 0.0;
  bool pass = true;
  bool applicable = true;  // false when the check's precondition failed
  std::string detail;

  // One JSON object on a single line.
  std::string to_json() const;
};

inline constexpr int kBruteForceMaxVertices = 24;
inline constexpr int kBruteForceMarginalVertices = 20;

struct BruteForceMax {
  double score = 0.0;
  Labeling labeling;
};

// Maximum of the full objective by direct enumeration of labelings; with
// gamma == 0 only one labeling per sign class is visited.
BruteForceMax brute_force_max(const Graph& g, const SignedObservations& obs,
                              double gamma);

// Posterior marginals by summing the likelihood over every labeling.
MarginalTable brute_force_marginals(const Graph& g,
                                    const SignedObservations& obs, double p,
                                    double q);

// Every maximal misclassified component of the better of +-labeling has at
// least half of its boundary corrupted.
OracleReport check_flipping_lemma(const Graph& g, const Observations& obs,
                                  const Labeling& truth,
                                  const FirstStageResult& first);

// For the sign whose misclassified set has no type-6 component, the
// filled-in set of every misclassified component has at least half of its
// boundary corrupted.
OracleReport check_filled_lemma(const GridGraph& g, const Observations& obs,
                                const Labeling& truth,
                                const FirstStageResult& first);

// H <= 2 |B| / (c d) for the better sign, applicable when every
// misclassified component has at most N/2 vertices.
OracleReport check_expander_bound(const Graph& g, const Observations& obs,
                                  const Labeling& truth,
                                  const FirstStageResult& first,
                                  Rational expansion, int degree);

// Marginal prediction errors under truth and -truth with the corruption
// pattern held fixed must coincide.
OracleReport check_marginal_symmetry(const GridGraph& g, const Labeling& truth,
                                     double p, double q, std::uint64_t seed);

}  // namespace approxrec
