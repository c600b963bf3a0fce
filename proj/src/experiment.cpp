#include "approxrec/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <ostream>

#include "approxrec/errors.hpp"
#include "approxrec/oracles.hpp"
#include "approxrec/rng.hpp"

namespace approxrec {

namespace {

struct Named {
  Algorithm algorithm;
  const char* name;
};

constexpr Named kAlgorithms[] = {
    {Algorithm::kTwoStep, "two-step"},
    {Algorithm::kMarginal, "marginal"},
    {Algorithm::kMapFull, "map-full"},
    {Algorithm::kEdgeOnly, "edge-only"},
    {Algorithm::kOracle, "oracle"},
};

}  // namespace

std::string to_string(Algorithm a) {
  for (const Named& n : kAlgorithms) {
    if (n.algorithm == a) return n.name;
  }
  return "unknown";
}

Algorithm parse_algorithm(const std::string& name) {
  for (const Named& n : kAlgorithms) {
    if (name == n.name) return n.algorithm;
  }
  throw ConfigError("unknown algorithm '" + name + "'");
}

std::string to_string(AdversaryMode m) {
  return m == AdversaryMode::kConsistentFlip ? "flip" : "random";
}

AdversaryMode parse_adversary(const std::string& name) {
  if (name == "flip") return AdversaryMode::kConsistentFlip;
  if (name == "random") return AdversaryMode::kRandomLabels;
  throw ConfigError("unknown adversary '" + name + "'");
}

std::string to_string(TruthMode m) {
  switch (m) {
    case TruthMode::kPlus:
      return "plus";
    case TruthMode::kCheckerboard:
      return "checkerboard";
    case TruthMode::kRandom:
      return "random";
  }
  return "unknown";
}

TruthMode parse_truth(const std::string& name) {
  if (name == "plus") return TruthMode::kPlus;
  if (name == "checkerboard") return TruthMode::kCheckerboard;
  if (name == "random") return TruthMode::kRandom;
  throw ConfigError("unknown truth mode '" + name + "'");
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.rows < 1 || cfg.cols < 1) {
    throw ConfigError("grid dimensions must be positive");
  }
  if (cfg.trials < 1) throw ConfigError("trials must be at least 1");
  if (cfg.p_list.empty()) throw ConfigError("p list is empty");
  for (double p : cfg.p_list) {
    if (!(p >= 0.0 && p <= 0.5)) {
      throw ConfigError("p values must lie in [0, 1/2]");
    }
  }
  if (!(cfg.q >= 0.0 && cfg.q <= 0.5)) {
    throw ConfigError("q must lie in [0, 1/2]");
  }
  if (cfg.algorithms.empty()) throw ConfigError("no algorithm selected");
  for (Algorithm a : cfg.algorithms) {
    const std::string name = to_string(a);
    int row_cap = cfg.limits.max_rows;
    if (a == Algorithm::kMarginal) row_cap = cfg.limits.marginal_rows;
    if (cfg.rows > row_cap) {
      throw CapacityError(name + ": " + std::to_string(cfg.rows) +
                          " rows exceed the cap of " + std::to_string(row_cap));
    }
    if (a == Algorithm::kOracle &&
        cfg.rows * cfg.cols > kBruteForceMaxVertices) {
      throw CapacityError(name + ": more than " +
                          std::to_string(kBruteForceMaxVertices) +
                          " vertices");
    }
    if (a == Algorithm::kMarginal || a == Algorithm::kMapFull ||
        a == Algorithm::kOracle) {
      for (double p : cfg.p_list) {
        if (p == 0.0 || p == 0.5 || cfg.q == 0.0) {
          throw DegenerateNoiseError(
              name + " needs 0 < p < 1/2 and q > 0; use two-step or "
                     "edge-only for degenerate noise");
        }
      }
    }
  }
}

int trial_error(Algorithm a, const GridGraph& g, const Labeling& truth,
                const SignedObservations& obs, double p, double q,
                const InferenceLimits& limits) {
  switch (a) {
    case Algorithm::kTwoStep:
      return hamming_error(two_step(g, obs, limits), truth);
    case Algorithm::kEdgeOnly:
      return sign_symmetric_error(
          max_agreement_edges(g, obs, limits).labeling, truth);
    case Algorithm::kMarginal:
      return hamming_error(marginal_predict(marginals(g, obs, p, q, limits)),
                           truth);
    case Algorithm::kMapFull:
      return hamming_error(map_full(g, obs, gamma(p, q), limits).labeling,
                           truth);
    case Algorithm::kOracle:
      return hamming_error(brute_force_max(g, obs, gamma(p, q).value).labeling,
                           truth);
  }
  throw ConfigError("unknown algorithm");
}

namespace {

Labeling make_truth(const GridGraph& g, TruthMode mode, std::uint64_t seed) {
  switch (mode) {
    case TruthMode::kPlus:
      return Labeling::constant(g.num_vertices(), 1);
    case TruthMode::kCheckerboard:
      return checkerboard_truth(g, seed);
    case TruthMode::kRandom:
      return random_truth(g.num_vertices(), seed);
  }
  throw ConfigError("unknown truth mode");
}

ErrorTable run(const ExperimentConfig& cfg, bool parallel) {
  validate(cfg);
  const GridGraph g = build_grid(cfg.rows, cfg.cols);
  const std::size_t algos = cfg.algorithms.size();
  ErrorTable table;
  for (double p : cfg.p_list) {
    NoiseParams params{p, cfg.q, {}};
    if (cfg.adversary == AdversaryMode::kRandomLabels) {
      params.adversary = random_label_adversary();
    }
    std::vector<int> errors(static_cast<std::size_t>(cfg.trials) * algos);
    std::vector<double> elapsed(static_cast<std::size_t>(cfg.trials) * algos);
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long t = 0; t < cfg.trials; ++t) {
      try {
        const std::uint64_t seed =
            CounterRng::mix(cfg.seed) ^ static_cast<std::uint64_t>(t);
        const Labeling truth = make_truth(g, cfg.truth, seed);
        const Observations obs = sample_observations(g, truth, params, seed);
        for (std::size_t k = 0; k < algos; ++k) {
          const auto start = std::chrono::steady_clock::now();
          errors[t * algos + k] = trial_error(cfg.algorithms[k], g, truth,
                                              obs.signs, p, cfg.q, cfg.limits);
          elapsed[t * algos + k] =
              std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - start)
                  .count();
        }
      } catch (...) {
#pragma omp critical
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);

    for (std::size_t k = 0; k < algos; ++k) {
      double sum = 0.0;
      double sum2 = 0.0;
      double ms = 0.0;
      for (long t = 0; t < cfg.trials; ++t) {
        const double e = errors[t * algos + k];
        sum += e;
        sum2 += e * e;
        ms += elapsed[t * algos + k];
      }
      const double n = static_cast<double>(cfg.trials);
      ErrorRow row;
      row.algorithm = cfg.algorithms[k];
      row.p = p;
      row.q = cfg.q;
      row.rows = cfg.rows;
      row.cols = cfg.cols;
      row.trials = cfg.trials;
      row.mean_error = sum / n;
      if (cfg.trials > 1) {
        const double var =
            std::max(0.0, (sum2 - n * row.mean_error * row.mean_error) /
                              (n - 1.0));
        row.stderr_error = std::sqrt(var / n);
      }
      row.wall_ms = cfg.record_time ? ms : 0.0;
      table.rows.push_back(row);
    }
  }
  std::stable_sort(table.rows.begin(), table.rows.end(),
                   [](const ErrorRow& a, const ErrorRow& b) {
                     const std::string na = to_string(a.algorithm);
                     const std::string nb = to_string(b.algorithm);
                     if (na != nb) return na < nb;
                     return a.p < b.p;
                   });
  return table;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

template <class Emit>
void to_file(const std::string& path, Emit emit) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  emit(out);
  out.flush();
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace

ErrorTable run_experiment(const ExperimentConfig& cfg) {
  return run(cfg, true);
}

ErrorTable run_experiment_serial(const ExperimentConfig& cfg) {
  return run(cfg, false);
}

void emit_csv(const ErrorTable& table, std::ostream& out) {
  out << "algorithm,p,q,rows,cols,trials,mean_error,stderr,wall_ms\n";
  for (const ErrorRow& r : table.rows) {
    out << to_string(r.algorithm) << ',' << fmt(r.p) << ',' << fmt(r.q) << ','
        << r.rows << ',' << r.cols << ',' << r.trials << ','
        << fmt(r.mean_error) << ',' << fmt(r.stderr_error) << ','
        << fmt(r.wall_ms) << '\n';
  }
}

void emit_csv(const ErrorTable& table, const std::string& path) {
  to_file(path, [&](std::ostream& out) { emit_csv(table, out); });
}

void emit_plot(const ErrorTable& table, std::ostream& out) {
  if (table.rows.empty()) throw ConfigError("cannot plot an empty table");
  constexpr double kWidth = 640, kHeight = 400, kMargin = 60;
  double max_p = 0.0;
  double max_err = 0.0;
  std::map<std::string, std::vector<const ErrorRow*>> series;
  for (const ErrorRow& r : table.rows) {
    max_p = std::max(max_p, r.p);
    max_err = std::max(max_err, r.mean_error);
    series[to_string(r.algorithm)].push_back(&r);
  }
  const double x_max = max_p > 0.0 ? max_p : 1.0;
  const double y_max = max_err > 0.0 ? 1.1 * max_err : 1.0;
  auto px = [&](double p) {
    return kMargin + p / x_max * (kWidth - 2 * kMargin);
  };
  auto py = [&](double e) {
    return kHeight - kMargin - e / y_max * (kHeight - 2 * kMargin);
  };
  static constexpr const char* kColours[] = {"#1f77b4", "#d62728", "#2ca02c",
                                             "#9467bd", "#ff7f0e"};

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << kMargin << "\" y1=\"" << py(0) << "\" x2=\""
      << px(x_max) << "\" y2=\"" << py(0) << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << kMargin << "\" y1=\"" << py(0) << "\" x2=\""
      << kMargin << "\" y2=\"" << py(y_max) << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 15
      << "\" text-anchor=\"middle\">p (max " << fmt(x_max) << ")</text>\n";
  out << "<text x=\"15\" y=\"" << kHeight / 2
      << "\" transform=\"rotate(-90 15 " << kHeight / 2
      << ")\" text-anchor=\"middle\">mean Hamming error (max " << fmt(y_max)
      << ")</text>\n";
  std::size_t idx = 0;
  for (const auto& [name, rows] : series) {
    const char* colour = kColours[idx % std::size(kColours)];
    out << "<polyline fill=\"none\" stroke=\"" << colour << "\" points=\"";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out << (i ? " " : "") << fmt(px(rows[i]->p)) << ','
          << fmt(py(rows[i]->mean_error));
    }
    out << "\"/>\n";
    out << "<text x=\"" << kWidth - kMargin << "\" y=\""
        << kMargin + 18 * static_cast<double>(idx) << "\" fill=\"" << colour
        << "\" text-anchor=\"end\">" << name << "</text>\n";
    ++idx;
  }
  out << "</svg>\n";
}

void emit_plot(const ErrorTable& table, const std::string& path) {
  to_file(path, [&](std::ostream& out) { emit_plot(table, out); });
}

}  // namespace approxrec
