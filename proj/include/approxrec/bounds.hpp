#pragma once

#include <cstdint>

#include "approxrec/graph.hpp"
#include "approxrec/polygons.hpp"

namespace approxrec {

struct BadRegionBound {
  double loose = 0.0;       // (3 sqrt p)^i
  double tight = 0.0;       // (2 e p)^(i/2)
  double exact_tail = 0.0;  // P(Binomial(i, p) >= ceil(i/2))
};

// Probability that a set with i boundary edges has at least half of them
// corrupted. Requires i >= 1 and 0 <= p <= 1/2.
BadRegionBound bad_region_bounds(int i, double p);
double bad_region_prob_bound(int i, double p, bool tight);
// P(Binomial(i, p) >= k).
double binomial_upper_tail(int i, int k, double p);

struct SeriesBound {
  double p = 0.0;
  long n = 0;
  double interior_coefficient = 0.0;  // multiplies N
  double boundary_coefficient = 0.0;  // multiplies sqrt(N)
  bool converges = false;
  double value() const;  // infinite when the series diverge
};

// N * sum_{i>=2} (i/16)(81p)^i + sqrt(N) * sum_{j>=2} (2j^2/9)(9 sqrt p)^j.
SeriesBound series_error_bound(double p, long n);

struct RefinedConstant {
  double p = 0.0;
  int i_max = 0;
  double explicit_term = 0.0;  // per unit N, perimeters 4..i_max
  double remainder = 0.0;      // per unit N, perimeters above i_max
  bool remainder_converges = false;
  double total() const;  // C(p) with bound C(p) p^2 N
};

inline constexpr double kConnectiveConstantBound = 2.65;

// Type-1 error constant from a polygon census covering perimeters up to the
// even i_max.
RefinedConstant refined_constant(double p, const CycleCensus& census,
                                 int i_max);

// 6 p^2 (1-p)^2.
double ambiguous_node_rate(double p);

struct LowerBoundStats {
  long trials = 0;
  int candidate_nodes = 0;        // white vertices of degree 4
  double mean_ambiguous = 0.0;    // per trial
  double stderr_ambiguous = 0.0;
  double mean_ambiguous_error = 0.0;  // errors on ambiguous nodes per trial
  double stderr_ambiguous_error = 0.0;
  double mean_white_error = 0.0;  // errors on all white nodes per trial
};

// Checkerboard truths with the black vertices revealed; every white vertex
// is predicted from its posterior given its incident edges and its own
// node observation.
LowerBoundStats lower_bound_estimate(const GridGraph& g, double p, double q,
                                     long trials, std::uint64_t seed);

// (3p/c) N.
double expander_error_bound(double c, int d, double p, long n);
// 2 |B| / (c d).
double expander_conditional_bound(double c, int d, long bad_edges);

struct MinCutRegionBound {
  double value = 0.0;       // N^(2i/cstar)
  bool condition = false;   // cstar >= c log2 N
};

MinCutRegionBound mincut_region_count_bound(int cstar, long n, int i,
                                            double c = 2.0);

}  // namespace approxrec
