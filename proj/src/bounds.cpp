#include "approxrec/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "approxrec/errors.hpp"
#include "approxrec/noise.hpp"
#include "approxrec/rng.hpp"

namespace approxrec {

namespace {

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 0.5)) {
    throw ConfigError("probability must lie in [0, 1/2]");
  }
}

double log_choose(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
         std::lgamma(n - k + 1.0);
}

}  // namespace

double binomial_upper_tail(int i, int k, double p) {
  if (k <= 0) return 1.0;
  if (k > i) return 0.0;
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  double sum = 0.0;
  for (int j = k; j <= i; ++j) {
    sum += std::exp(log_choose(i, j) + j * std::log(p) +
                    (i - j) * std::log1p(-p));
  }
  return sum;
}

BadRegionBound bad_region_bounds(int i, double p) {
  if (i < 1) throw ConfigError("boundary size must be positive");
  check_probability(p);
  BadRegionBound b;
  b.loose = std::pow(3.0 * std::sqrt(p), i);
  b.tight = std::pow(2.0 * std::numbers::e * p, i / 2.0);
  b.exact_tail = binomial_upper_tail(i, (i + 1) / 2, p);
  return b;
}

double bad_region_prob_bound(int i, double p, bool tight) {
  const BadRegionBound b = bad_region_bounds(i, p);
  return tight ? b.tight : b.loose;
}

double SeriesBound::value() const {
  if (!converges) return std::numeric_limits<double>::infinity();
  return interior_coefficient * static_cast<double>(n) +
         boundary_coefficient * std::sqrt(static_cast<double>(n));
}

SeriesBound series_error_bound(double p, long n) {
  if (n < 4) throw ConfigError("series bound needs N >= 4");
  check_probability(p);
  SeriesBound s;
  s.p = p;
  s.n = n;
  const double x = 81.0 * p;
  const double y = 9.0 * std::sqrt(p);
  // 81p < 1 and 9 sqrt(p) < 1 are the same condition.
  s.converges = p < 1.0 / 81.0;
  if (!s.converges) {
    s.interior_coefficient = std::numeric_limits<double>::infinity();
    s.boundary_coefficient = std::numeric_limits<double>::infinity();
    return s;
  }
  // sum_{i>=1} i x^i = x/(1-x)^2 and sum_{j>=1} j^2 y^j = y(1+y)/(1-y)^3.
  s.interior_coefficient = (x / ((1.0 - x) * (1.0 - x)) - x) / 16.0;
  s.boundary_coefficient =
      2.0 / 9.0 * (y * (1.0 + y) / std::pow(1.0 - y, 3) - y);
  return s;
}

double RefinedConstant::total() const {
  if (!remainder_converges) return std::numeric_limits<double>::infinity();
  return (explicit_term + remainder) / (p * p);
}

RefinedConstant refined_constant(double p, const CycleCensus& census,
                                 int i_max) {
  if (i_max < 4 || i_max % 2 != 0) {
    throw ConfigError("i_max must be an even integer >= 4");
  }
  if (census.max_perimeter() < i_max) {
    throw ConfigError("census covers perimeters only up to " +
                      std::to_string(census.max_perimeter()));
  }
  if (!(p > 0.0 && p <= 0.5)) {
    throw ConfigError("refined constant needs 0 < p <= 1/2");
  }
  RefinedConstant rc;
  rc.p = p;
  rc.i_max = i_max;
  for (int i = 4; i <= i_max; i += 2) {
    rc.explicit_term += binomial_upper_tail(i, i / 2, p) *
                        static_cast<double>(census.area_weighted(i));
  }
  const double b = 2.0 * std::numbers::e * p * kConnectiveConstantBound *
                   kConnectiveConstantBound;
  const double m = i_max / 2 + 1;
  rc.remainder_converges = b < 1.0;
  rc.remainder = rc.remainder_converges
                     ? m * m * std::pow(b, m) / std::pow(1.0 - b, 3)
                     : std::numeric_limits<double>::infinity();
  return rc;
}

double ambiguous_node_rate(double p) {
  check_probability(p);
  return 6.0 * p * p * (1.0 - p) * (1.0 - p);
}

LowerBoundStats lower_bound_estimate(const GridGraph& g, double p, double q,
                                     long trials, std::uint64_t seed) {
  if (trials < 1) throw ConfigError("trials must be positive");
  check_probability(p);
  check_probability(q);
  LowerBoundStats st;
  st.trials = trials;
  std::vector<Vertex> whites;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (!is_black(g, v)) whites.push_back(v);
    if (!is_black(g, v) && g.degree(v) == 4) ++st.candidate_nodes;
  }
  // Log-likelihood ratio contributions; 0 and 1/2 are handled by saturation.
  auto llr = [](double prob) {
    if (prob == 0.0) return std::numeric_limits<double>::infinity();
    return std::log1p(-prob) - std::log(prob);
  };
  const double edge_w = llr(p);
  const double node_w = llr(q);

  double sum_amb = 0.0, sum_amb2 = 0.0;
  double sum_err = 0.0, sum_err2 = 0.0;
  double sum_white = 0.0;
  const NoiseParams params{p, q, {}};
  for (long t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = seed ^ static_cast<std::uint64_t>(t);
    const Labeling truth = checkerboard_truth(g, trial_seed);
    const Observations obs = sample_observations(g, truth, params, trial_seed);
    int ambiguous = 0;
    int amb_err = 0;
    int white_err = 0;
    for (Vertex v : whites) {
      int plus_edges = 0;
      for (const Incidence& inc : g.neighbors(v)) {
        plus_edges += obs.signs.edge[inc.edge] > 0;
      }
      const int minus_edges = g.degree(v) - plus_edges;
      // Black neighbours are +1, so an edge sign is a direct vote on y_v.
      double score = 0.0;
      if (plus_edges != minus_edges) {
        score += (plus_edges - minus_edges) * edge_w;
      }
      score += obs.signs.node[v] * node_w;
      const std::int8_t pred = score >= 0.0 ? 1 : -1;
      const bool wrong = pred != truth[v];
      white_err += wrong;
      if (g.degree(v) == 4 && plus_edges == 2) {
        ++ambiguous;
        amb_err += wrong;
      }
    }
    sum_amb += ambiguous;
    sum_amb2 += static_cast<double>(ambiguous) * ambiguous;
    sum_err += amb_err;
    sum_err2 += static_cast<double>(amb_err) * amb_err;
    sum_white += white_err;
  }
  const double n = static_cast<double>(trials);
  auto stderr_of = [n](double s, double s2) {
    if (n < 2) return 0.0;
    const double mean = s / n;
    const double var = std::max(0.0, (s2 - n * mean * mean) / (n - 1));
    return std::sqrt(var / n);
  };
  st.mean_ambiguous = sum_amb / n;
  st.stderr_ambiguous = stderr_of(sum_amb, sum_amb2);
  st.mean_ambiguous_error = sum_err / n;
  st.stderr_ambiguous_error = stderr_of(sum_err, sum_err2);
  st.mean_white_error = sum_white / n;
  return st;
}

double expander_error_bound(double c, int d, double p, long n) {
  if (!(c > 0.0)) throw ConfigError("expansion constant must be positive");
  if (d < 3) throw ConfigError("degree must be at least 3");
  check_probability(p);
  return 3.0 * p / c * static_cast<double>(n);
}

double expander_conditional_bound(double c, int d, long bad_edges) {
  if (!(c > 0.0)) throw ConfigError("expansion constant must be positive");
  if (d < 3) throw ConfigError("degree must be at least 3");
  return 2.0 * static_cast<double>(bad_edges) / (c * d);
}

MinCutRegionBound mincut_region_count_bound(int cstar, long n, int i,
                                            double c) {
  if (cstar < 1) throw ConfigError("minimum cut must be at least 1");
  if (n < 1) throw ConfigError("graph must have a vertex");
  MinCutRegionBound out;
  out.value = std::pow(static_cast<double>(n), 2.0 * i / cstar);
  out.condition = cstar >= c * std::log2(static_cast<double>(n));
  return out;
}

}  // namespace approxrec
