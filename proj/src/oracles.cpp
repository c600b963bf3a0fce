#include "approxrec/oracles.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "approxrec/errors.hpp"
#include "approxrec/regions.hpp"

namespace approxrec {

std::string OracleReport::to_json() const {
  const nlohmann::ordered_json j = {
      {"check", check},
      {"instance", instance},
      {"oracle", oracle_value},
      {"candidate", candidate_value},
      {"pass", pass},
      {"applicable", applicable},
      {"detail", detail},
  };
  return j.dump();
}

namespace {

void require_vertices(const Graph& g, int cap, const char* what) {
  if (g.num_vertices() > cap) {
    throw CapacityError(std::string(what) + " limited to " +
                        std::to_string(cap) + " vertices");
  }
}

std::string describe(const Graph& g, const Observations& obs) {
  std::ostringstream out;
  out << "N=" << g.num_vertices() << " M=" << g.num_edges()
      << " bad_edges=" << obs.num_bad_edges();
  return out.str();
}

// The better of first and -first against the truth (first on ties).
Labeling better_sign(const Labeling& first, const Labeling& truth) {
  const int h = hamming_error(first, truth);
  return 2 * h > first.size() ? first.negated() : first;
}

VertexSet misclassified(const Labeling& pred, const Labeling& truth) {
  VertexSet s(pred.size());
  for (Vertex v = 0; v < pred.size(); ++v) {
    if (pred[v] != truth[v]) s.insert(v);
  }
  return s;
}

struct BoundaryCount {
  int size = 0;
  int bad = 0;
};

BoundaryCount count_bad(const Graph& g, const Observations& obs,
                        const VertexSet& s) {
  BoundaryCount out;
  for (EdgeId e : boundary(g, s)) {
    ++out.size;
    out.bad += obs.bad_edges[e];
  }
  return out;
}

}  // namespace

BruteForceMax brute_force_max(const Graph& g, const SignedObservations& obs,
                              double gamma) {
  require_vertices(g, kBruteForceMaxVertices, "brute-force maximization");
  const int n = g.num_vertices();
  // With no node term, fixing the last vertex to +1 covers every class.
  const std::uint64_t count =
      gamma == 0.0 && n > 0 ? std::uint64_t{1} << (n - 1)
                            : std::uint64_t{1} << n;
  const std::uint64_t fixed = gamma == 0.0 && n > 0
                                  ? std::uint64_t{1} << (n - 1)
                                  : 0;
  BruteForceMax best{-std::numeric_limits<double>::infinity(), {}};
  std::uint64_t best_mask = 0;
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t mask = i | fixed;
    long edges = 0;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      const auto [u, v] = g.edge(e);
      const bool same = ((mask >> u) & 1) == ((mask >> v) & 1);
      edges += same ? obs.edge[e] : -obs.edge[e];
    }
    long nodes = 0;
    for (Vertex v = 0; v < n; ++v) {
      nodes += ((mask >> v) & 1) ? obs.node[v] : -obs.node[v];
    }
    const double score = static_cast<double>(edges) + gamma * nodes;
    if (score > best.score) {
      best.score = score;
      best_mask = mask;
    }
  }
  std::vector<std::int8_t> y(n);
  for (Vertex v = 0; v < n; ++v) y[v] = ((best_mask >> v) & 1) ? 1 : -1;
  best.labeling = Labeling(std::move(y));
  return best;
}

MarginalTable brute_force_marginals(const Graph& g,
                                    const SignedObservations& obs, double p,
                                    double q) {
  require_vertices(g, kBruteForceMarginalVertices, "brute-force marginals");
  if (!(p > 0.0 && p <= 0.5) || !(q > 0.0 && q <= 0.5)) {
    throw DegenerateNoiseError("brute-force marginals need 0 < p, q <= 1/2");
  }
  const int n = g.num_vertices();
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<double> loglik(count);
  double peak = -std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    int edge_agree = 0;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      const auto [u, v] = g.edge(e);
      const int product = ((mask >> u) & 1) == ((mask >> v) & 1) ? 1 : -1;
      edge_agree += product == obs.edge[e];
    }
    int node_agree = 0;
    for (Vertex v = 0; v < n; ++v) {
      node_agree += (((mask >> v) & 1) ? 1 : -1) == obs.node[v];
    }
    const double ll = edge_agree * std::log(1.0 - p) +
                      (g.num_edges() - edge_agree) * std::log(p) +
                      node_agree * std::log(1.0 - q) +
                      (n - node_agree) * std::log(q);
    loglik[mask] = ll;
    peak = std::max(peak, ll);
  }
  double total = 0.0;
  std::vector<double> plus(n, 0.0);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    const double w = std::exp(loglik[mask] - peak);
    total += w;
    for (Vertex v = 0; v < n; ++v) {
      if ((mask >> v) & 1) plus[v] += w;
    }
  }
  for (double& x : plus) x /= total;
  return MarginalTable(std::move(plus));
}

OracleReport check_flipping_lemma(const Graph& g, const Observations& obs,
                                  const Labeling& truth,
                                  const FirstStageResult& first) {
  OracleReport report;
  report.check = "flipping_lemma";
  report.instance = describe(g, obs);
  report.candidate_value = 0.5;
  report.oracle_value = 1.0;
  const Labeling pred = better_sign(first.labeling, truth);
  for (const auto& comp : induced_components(g, misclassified(pred, truth))) {
    const BoundaryCount b = count_bad(g, obs, VertexSet(g.num_vertices(), comp));
    if (b.size == 0) continue;
    const double frac = static_cast<double>(b.bad) / b.size;
    report.oracle_value = std::min(report.oracle_value, frac);
    if (2 * b.bad < b.size && report.pass) {
      report.pass = false;
      report.detail = "component of size " + std::to_string(comp.size()) +
                      " rooted at " + std::to_string(comp.front()) + " has " +
                      std::to_string(b.bad) + "/" + std::to_string(b.size) +
                      " bad boundary edges";
    }
  }
  return report;
}

OracleReport check_filled_lemma(const GridGraph& g, const Observations& obs,
                                const Labeling& truth,
                                const FirstStageResult& first) {
  OracleReport report;
  report.check = "filled_lemma";
  report.instance = describe(g, obs);
  report.candidate_value = 0.5;
  report.oracle_value = 1.0;

  const Labeling preferred = better_sign(first.labeling, truth);
  std::vector<std::vector<Vertex>> comps;
  bool found = false;
  for (const Labeling& pred : {preferred, preferred.negated()}) {
    comps = induced_components(g, misclassified(pred, truth));
    bool has_type6 = false;
    for (const auto& comp : comps) {
      const VertexSet s(g.num_vertices(), comp);
      has_type6 |= classify_region(g, s) == RegionType::kAllSides;
    }
    if (!has_type6) {
      found = true;
      break;
    }
  }
  if (!found) {
    report.applicable = false;
    report.detail = "both signs misclassify a type-6 set";
    return report;
  }
  for (const auto& comp : comps) {
    const FilledRegion f = fill_in(g, VertexSet(g.num_vertices(), comp));
    const BoundaryCount b = count_bad(g, obs, f.filled);
    if (b.size == 0) continue;
    const double frac = static_cast<double>(b.bad) / b.size;
    report.oracle_value = std::min(report.oracle_value, frac);
    if (2 * b.bad < b.size && report.pass) {
      report.pass = false;
      report.detail = "filled set of size " + std::to_string(f.filled.size()) +
                      " has " + std::to_string(b.bad) + "/" +
                      std::to_string(b.size) + " bad boundary edges";
    }
  }
  return report;
}

OracleReport check_expander_bound(const Graph& g, const Observations& obs,
                                  const Labeling& truth,
                                  const FirstStageResult& first,
                                  Rational expansion, int degree) {
  OracleReport report;
  report.check = "expander_bound";
  report.instance = describe(g, obs);
  const Labeling pred = better_sign(first.labeling, truth);
  const int errors = hamming_error(pred, truth);
  const int bad = obs.num_bad_edges();
  report.candidate_value = errors;
  report.oracle_value =
      expansion.num == 0
          ? std::numeric_limits<double>::infinity()
          : 2.0 * bad / (expansion.value() * degree);
  for (const auto& comp : induced_components(g, misclassified(pred, truth))) {
    if (2 * static_cast<int>(comp.size()) > g.num_vertices()) {
      report.applicable = false;
      report.detail = "a misclassified component exceeds N/2";
      return report;
    }
  }
  // errors * c * d <= 2 |B| in exact arithmetic.
  report.pass = static_cast<std::int64_t>(errors) * expansion.num * degree <=
                2 * static_cast<std::int64_t>(bad) * expansion.den;
  if (!report.pass) {
    report.detail = "H=" + std::to_string(errors) +
                    " exceeds 2|B|/(cd) with |B|=" + std::to_string(bad);
  }
  return report;
}

OracleReport check_marginal_symmetry(const GridGraph& g, const Labeling& truth,
                                     double p, double q, std::uint64_t seed) {
  const NoiseParams params{p, q, {}};
  const Labeling flipped = truth.negated();
  const Observations a = sample_observations(g, truth, params, seed);
  const Observations b = sample_observations(g, flipped, params, seed);
  const int err_a =
      hamming_error(marginal_predict(marginals(g, a.signs, p, q)), truth);
  const int err_b =
      hamming_error(marginal_predict(marginals(g, b.signs, p, q)), flipped);
  OracleReport report;
  report.check = "marginal_symmetry";
  report.instance = describe(g, a) + " seed=" + std::to_string(seed);
  report.oracle_value = err_a;
  report.candidate_value = err_b;
  report.pass = err_a == err_b;
  if (!report.pass) report.detail = "errors differ under global sign flip";
  return report;
}

}  // namespace approxrec
