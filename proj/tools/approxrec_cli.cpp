#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "approxrec/bounds.hpp"
#include "approxrec/errors.hpp"
#include "approxrec/experiment.hpp"
#include "approxrec/graph.hpp"
#include "approxrec/inference.hpp"
#include "approxrec/metrics.hpp"
#include "approxrec/noise.hpp"
#include "approxrec/oracles.hpp"
#include "approxrec/polygons.hpp"
#include "approxrec/regions.hpp"
#include "approxrec/rng.hpp"

using namespace approxrec;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitCapacity = 3;

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "'");
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  return in;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

NoiseParams noise_params(double p, double q, const std::string& adversary) {
  NoiseParams params{p, q, {}};
  if (parse_adversary(adversary) == AdversaryMode::kRandomLabels) {
    params.adversary = random_label_adversary();
  }
  return params;
}

Labeling make_truth(const GridGraph& g, const std::string& mode,
                    std::uint64_t seed) {
  switch (parse_truth(mode)) {
    case TruthMode::kPlus:
      return Labeling::constant(g.num_vertices(), 1);
    case TruthMode::kCheckerboard:
      return checkerboard_truth(g, seed);
    case TruthMode::kRandom:
      return random_truth(g.num_vertices(), seed);
  }
  throw ConfigError("unknown truth mode");
}

struct Common {
  int rows = 20;
  int cols = 20;
  double p = 0.02;
  double q = 0.4;
  std::uint64_t seed = 1;
  std::string adversary = "flip";
  std::string truth = "plus";
  std::string out;
};

void add_grid(CLI::App* cmd, Common& c) {
  cmd->add_option("--rows", c.rows, "grid rows")->check(CLI::PositiveNumber);
  cmd->add_option("--cols", c.cols, "grid columns")->check(CLI::PositiveNumber);
}

// generate: grid, sampled truth and observations.
int run_generate(const Common& c) {
  const GridGraph g = build_grid(c.rows, c.cols);
  const Labeling truth = make_truth(g, c.truth, c.seed);
  const Observations obs = sample_observations(
      g, truth, noise_params(c.p, c.q, c.adversary), c.seed);
  const std::string prefix = c.out.empty() ? "instance" : c.out;
  auto graph_out = open_out(prefix + ".graph");
  write_graph(graph_out, g);
  auto obs_out = open_out(prefix + ".obs");
  write_observations(obs_out, g, obs.signs);
  auto truth_out = open_out(prefix + ".truth");
  write_labeling(truth_out, truth);
  std::cout << "wrote " << prefix << ".{graph,obs,truth}: "
            << obs.num_bad_edges() << " bad edges, " << obs.num_bad_nodes()
            << " bad nodes\n";
  return 0;
}

Labeling solve_grid(const GridGraph& g, const SignedObservations& obs,
                    const std::string& algo, double p, double q) {
  const Algorithm a = parse_algorithm(algo);
  if (a == Algorithm::kMapFull && q == 0.5) {
    std::cerr << "q = 1/2 carries no node evidence; solving edge-only\n";
    return max_agreement_edges(g, obs).labeling;
  }
  switch (a) {
    case Algorithm::kTwoStep:
      return two_step(g, obs);
    case Algorithm::kEdgeOnly:
      return max_agreement_edges(g, obs).labeling;
    case Algorithm::kMarginal:
      return marginal_predict(marginals(g, obs, p, q));
    case Algorithm::kMapFull:
      return map_full(g, obs, gamma(p, q)).labeling;
    case Algorithm::kOracle:
      return brute_force_max(g, obs, gamma(p, q).value).labeling;
  }
  throw ConfigError("unknown algorithm");
}

Labeling solve_general(const Graph& g, const SignedObservations& obs,
                       const std::string& algo) {
  const Algorithm a = parse_algorithm(algo);
  const Labeling first = max_agreement_exhaustive(g, obs).labeling;
  if (a == Algorithm::kEdgeOnly) return first;
  if (a == Algorithm::kTwoStep) return majority_vote(first, obs);
  throw ConfigError(algo + " needs a grid graph");
}

int run_solve(const Common& c, const std::string& graph_path,
              const std::string& obs_path, const std::string& truth_path,
              const std::string& algo) {
  auto graph_in = open_in(graph_path);
  const auto graph = read_graph(graph_in);
  const Graph& base = std::visit(
      [](const auto& g) -> const Graph& { return g; }, graph);
  auto obs_in = open_in(obs_path);
  const SignedObservations obs = read_observations(obs_in, base);
  const Labeling pred =
      std::holds_alternative<GridGraph>(graph)
          ? solve_grid(std::get<GridGraph>(graph), obs, algo, c.p, c.q)
          : solve_general(std::get<Graph>(graph), obs, algo);
  if (c.out.empty()) {
    write_labeling(std::cout, pred);
  } else {
    auto out = open_out(c.out);
    write_labeling(out, pred);
  }
  if (!truth_path.empty()) {
    auto truth_in = open_in(truth_path);
    const Labeling truth = read_labeling(truth_in);
    if (truth.size() != pred.size()) {
      throw ConfigError("truth file does not match the graph");
    }
    std::cerr << "hamming_error " << hamming_error(pred, truth)
              << " sign_symmetric_error " << sign_symmetric_error(pred, truth)
              << '\n';
  }
  return 0;
}

int run_experiment_cmd(const Common& c, bool dims_given,
                       const std::vector<double>& ps,
                       const std::vector<std::string>& algos, long trials,
                       const std::string& plot, bool timing) {
  ExperimentConfig cfg;
  cfg.rows = c.rows;
  cfg.cols = c.cols;
  cfg.p_list = ps;
  cfg.q = c.q;
  cfg.trials = trials;
  cfg.seed = c.seed;
  cfg.adversary = parse_adversary(c.adversary);
  cfg.truth = parse_truth(c.truth);
  cfg.record_time = timing;
  cfg.algorithms.clear();

  // Marginals run on a 12x12 companion grid unless a size was requested.
  ExperimentConfig companion = cfg;
  companion.rows = companion.cols = 12;
  companion.algorithms.clear();
  for (const std::string& name : algos) {
    const Algorithm a = parse_algorithm(name);
    if (a == Algorithm::kMarginal && !dims_given &&
        cfg.rows > cfg.limits.marginal_rows) {
      companion.algorithms.push_back(a);
    } else {
      cfg.algorithms.push_back(a);
    }
  }
  ErrorTable table;
  if (!cfg.algorithms.empty()) table = run_experiment(cfg);
  if (!companion.algorithms.empty()) {
    const ErrorTable extra = run_experiment(companion);
    table.rows.insert(table.rows.end(), extra.rows.begin(), extra.rows.end());
    std::stable_sort(table.rows.begin(), table.rows.end(),
                     [](const ErrorRow& a, const ErrorRow& b) {
                       const auto na = to_string(a.algorithm);
                       const auto nb = to_string(b.algorithm);
                       return na != nb ? na < nb : a.p < b.p;
                     });
  }
  if (c.out.empty()) {
    emit_csv(table, std::cout);
  } else {
    emit_csv(table, c.out);
  }
  if (!plot.empty()) emit_plot(table, plot);
  return 0;
}

void bounds_row(std::ostream& out, const std::string& quantity, double p,
                long n, double value, bool flag) {
  out << quantity << ',' << fmt(p) << ',' << n << ',' << fmt(value) << ','
      << (flag ? 1 : 0) << '\n';
}

int run_bounds(const std::vector<double>& ps, long n, int i_max,
               double expansion, int degree, int cstar, const std::string& path) {
  const CycleCensus census = count_saps(i_max);
  std::ostringstream out;
  out << "quantity,p,N,value,flag\n";
  for (double p : ps) {
    for (int i = 1; i <= i_max; ++i) {
      const BadRegionBound b = bad_region_bounds(i, p);
      const std::string suffix = "_i" + std::to_string(i);
      bounds_row(out, "bad_region_exact" + suffix, p, n, b.exact_tail, true);
      bounds_row(out, "bad_region_tight" + suffix, p, n, b.tight,
                 b.exact_tail <= b.tight);
      bounds_row(out, "bad_region_loose" + suffix, p, n, b.loose,
                 b.tight <= b.loose);
    }
    const SeriesBound s = series_error_bound(p, n);
    bounds_row(out, "series_interior_coefficient", p, n,
               s.interior_coefficient, s.converges);
    bounds_row(out, "series_boundary_coefficient", p, n,
               s.boundary_coefficient, s.converges);
    bounds_row(out, "series_error_bound", p, n, s.value(), s.converges);
    if (p > 0.0) {
      const RefinedConstant rc = refined_constant(p, census, i_max);
      bounds_row(out, "refined_explicit", p, n, rc.explicit_term, true);
      bounds_row(out, "refined_remainder", p, n, rc.remainder,
                 rc.remainder_converges);
      bounds_row(out, "refined_constant", p, n, rc.total(),
                 rc.remainder_converges);
    }
    bounds_row(out, "ambiguous_node_rate", p, n, ambiguous_node_rate(p), true);
    bounds_row(out, "expander_error_bound", p, n,
               expander_error_bound(expansion, degree, p, n), true);
    bounds_row(out, "expander_conditional_bound", p, n,
               expander_conditional_bound(
                   expansion, degree,
                   std::lround(p * degree * static_cast<double>(n))),
               true);
    if (cstar > 0) {
      for (int i = 0; i <= i_max; ++i) {
        const MinCutRegionBound m = mincut_region_count_bound(cstar, n, i);
        bounds_row(out, "mincut_region_count_i" + std::to_string(i), p, n,
                   m.value, m.condition);
      }
    }
  }
  if (path.empty()) {
    std::cout << out.str();
  } else {
    auto file = open_out(path);
    file << out.str();
  }
  return 0;
}

int run_regions(const Common& c, int max_boundary, int census_max) {
  std::ostringstream out;
  if (census_max > 0) {
    write_census_csv(out, count_saps(census_max));
  } else {
    const GridGraph g = build_grid(c.rows, c.cols);
    const auto regions = enumerate_filled_regions(g, max_boundary);
    out << "boundary,type_class,count,max_area\n";
    for (const auto& [key, tally] : tally_regions(regions)) {
      out << key.first << ','
          << (key.second == TypeClass::kInterior ? "interior" : "perimeter")
          << ',' << tally.count << ',' << tally.max_area << '\n';
    }
  }
  if (c.out.empty()) {
    std::cout << out.str();
  } else {
    auto file = open_out(c.out);
    file << out.str();
  }
  return 0;
}

int run_verify(const Common& c, const std::string& suite, long trials) {
  const bool all = suite == "all";
  if (!all && suite != "oracle" && suite != "flipping" &&
      suite != "expander" && suite != "symmetry") {
    throw ConfigError("unknown suite '" + suite + "'");
  }
  long failures = 0;
  auto emit = [&](const OracleReport& r) {
    std::cout << r.to_json() << '\n';
    failures += !r.pass;
  };
  const NoiseParams params = noise_params(c.p, c.q, c.adversary);
  if (all || suite == "oracle") {
    const GridGraph g = build_grid(c.rows, c.cols);
    const GammaWeight gm = gamma(c.p, c.q);
    for (long t = 0; t < trials; ++t) {
      const std::uint64_t seed =
          CounterRng::mix(c.seed) ^ static_cast<std::uint64_t>(t);
      const Labeling truth = random_truth(g.num_vertices(), seed);
      const Observations obs = sample_observations(g, truth, params, seed);
      OracleReport r;
      r.check = "map_full_vs_brute_force";
      r.instance = "seed=" + std::to_string(seed);
      r.oracle_value = brute_force_max(g, obs.signs, gm.value).score;
      r.candidate_value = map_full(g, obs.signs, gm).score;
      r.pass = std::abs(r.oracle_value - r.candidate_value) <= 1e-9;
      emit(r);
    }
  }
  if (all || suite == "flipping") {
    const GridGraph g = build_grid(c.rows, c.cols);
    for (long t = 0; t < trials; ++t) {
      const std::uint64_t seed =
          CounterRng::mix(c.seed) ^ static_cast<std::uint64_t>(t);
      const Labeling truth = make_truth(g, c.truth, seed);
      const Observations obs = sample_observations(g, truth, params, seed);
      const FirstStageResult first = max_agreement_edges(g, obs.signs);
      emit(check_flipping_lemma(g, obs, truth, first));
      emit(check_filled_lemma(g, obs, truth, first));
    }
  }
  if (all || suite == "expander") {
    for (long t = 0; t < trials; ++t) {
      const std::uint64_t seed =
          CounterRng::mix(c.seed) ^ static_cast<std::uint64_t>(t);
      const Graph g = random_regular_graph(14, 3, seed);
      const Rational ce = expansion_constant(g);
      const Labeling truth = random_truth(g.num_vertices(), seed);
      const Observations obs = sample_observations(g, truth, params, seed);
      emit(check_expander_bound(g, obs, truth,
                                max_agreement_exhaustive(g, obs.signs), ce, 3));
    }
  }
  if (all || suite == "symmetry") {
    const GridGraph g = build_grid(c.rows, c.cols);
    for (long t = 0; t < trials; ++t) {
      const std::uint64_t seed =
          CounterRng::mix(c.seed) ^ static_cast<std::uint64_t>(t);
      emit(check_marginal_symmetry(g, random_truth(g.num_vertices(), seed),
                                   c.p, c.q, seed));
    }
  }
  std::cerr << failures << " failing checks\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate recovery of binary labels from noisy observations"};
  app.require_subcommand(1);
  Common c;

  auto* gen = app.add_subcommand("generate", "write a grid instance");
  add_grid(gen, c);
  gen->add_option("-p", c.p, "edge noise");
  gen->add_option("-q", c.q, "node noise");
  gen->add_option("--seed", c.seed);
  gen->add_option("--adversary", c.adversary, "flip or random");
  gen->add_option("--truth", c.truth, "plus, checkerboard or random");
  gen->add_option("--out", c.out, "output prefix");

  std::string graph_path, obs_path, truth_path, algo = "two-step";
  auto* solve = app.add_subcommand("solve", "solve one instance");
  solve->add_option("--graph", graph_path)->required();
  solve->add_option("--obs", obs_path)->required();
  solve->add_option("--truth", truth_path, "labeling file to score against");
  solve->add_option("--algo", algo,
                    "two-step, edge-only, marginal, map-full or oracle");
  solve->add_option("-p", c.p);
  solve->add_option("-q", c.q);
  solve->add_option("--out", c.out);

  std::vector<double> ps{0.01, 0.02, 0.03, 0.04, 0.05};
  std::vector<std::string> algos{"two-step"};
  long trials = 100;
  std::string plot;
  bool timing = false;
  auto* exp = app.add_subcommand("experiment", "Monte Carlo error sweep");
  auto* rows_opt = exp->add_option("--rows", c.rows)->check(CLI::PositiveNumber);
  auto* cols_opt = exp->add_option("--cols", c.cols)->check(CLI::PositiveNumber);
  exp->add_option("-p", ps, "edge noise levels")->delimiter(',');
  exp->add_option("-q", c.q);
  exp->add_option("--trials", trials);
  exp->add_option("--seed", c.seed);
  exp->add_option("--algo", algos)->delimiter(',');
  exp->add_option("--adversary", c.adversary);
  exp->add_option("--truth", c.truth);
  exp->add_option("--out", c.out, "CSV path (stdout when omitted)");
  exp->add_option("--plot", plot, "SVG path");
  exp->add_flag("--time", timing, "record wall_ms");

  long n = 400;
  int i_max = 12;
  double expansion = 0.5;
  int degree = 3;
  int cstar = 0;
  std::string bounds_out;
  std::vector<double> bound_ps{0.005, 0.01, 0.017};
  auto* bounds = app.add_subcommand("bounds", "evaluate analytic bounds");
  bounds->add_option("-p", bound_ps)->delimiter(',');
  bounds->add_option("-N", n, "number of vertices");
  bounds->add_option("--imax", i_max, "largest boundary size");
  bounds->add_option("--expansion", expansion);
  bounds->add_option("--degree", degree);
  bounds->add_option("--cstar", cstar, "minimum cut for region counts");
  bounds->add_option("--out", bounds_out);

  int max_boundary = 12;
  int census_max = 0;
  auto* regions = app.add_subcommand("regions", "filled regions or polygons");
  add_grid(regions, c);
  regions->add_option("--max-boundary", max_boundary);
  regions->add_option("--census", census_max,
                      "count lattice polygons up to this perimeter instead");
  regions->add_option("--out", c.out);

  std::string suite = "all";
  long verify_trials = 20;
  Common v;
  v.rows = v.cols = 4;
  auto* verify = app.add_subcommand("verify", "run oracle checks");
  add_grid(verify, v);
  verify->add_option("--suite", suite,
                     "oracle, flipping, expander, symmetry or all");
  verify->add_option("--trials", verify_trials);
  verify->add_option("-p", v.p);
  verify->add_option("-q", v.q);
  verify->add_option("--seed", v.seed);
  verify->add_option("--adversary", v.adversary);
  verify->add_option("--truth", v.truth);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*gen) return run_generate(c);
    if (*solve) return run_solve(c, graph_path, obs_path, truth_path, algo);
    if (*exp) {
      const bool dims_given = rows_opt->count() > 0 || cols_opt->count() > 0;
      return run_experiment_cmd(c, dims_given, ps, algos, trials, plot,
                                timing);
    }
    if (*bounds) {
      return run_bounds(bound_ps, n, i_max, expansion, degree, cstar,
                        bounds_out);
    }
    if (*regions) return run_regions(c, max_boundary, census_max);
    if (*verify) return run_verify(v, suite, verify_trials);
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
