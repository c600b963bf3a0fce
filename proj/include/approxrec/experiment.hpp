#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "approxrec/inference.hpp"

namespace approxrec {

enum class Algorithm { kTwoStep, kMarginal, kMapFull, kEdgeOnly, kOracle };
enum class AdversaryMode { kConsistentFlip, kRandomLabels };
enum class TruthMode { kPlus, kCheckerboard, kRandom };

std::string to_string(Algorithm a);
Algorithm parse_algorithm(const std::string& name);
std::string to_string(AdversaryMode m);
AdversaryMode parse_adversary(const std::string& name);
std::string to_string(TruthMode m);
TruthMode parse_truth(const std::string& name);

struct ExperimentConfig {
  int rows = 20;
  int cols = 20;
  std::vector<double> p_list{0.01, 0.02, 0.03, 0.04, 0.05};
  double q = 0.4;
  long trials = 100;
  std::uint64_t seed = 1;
  std::vector<Algorithm> algorithms{Algorithm::kTwoStep};
  AdversaryMode adversary = AdversaryMode::kConsistentFlip;
  TruthMode truth = TruthMode::kPlus;
  bool record_time = false;  // wall_ms stays 0 unless set
  InferenceLimits limits;
};

// Throws ConfigError or CapacityError naming the offending field or algorithm.
void validate(const ExperimentConfig& cfg);

struct ErrorRow {
  Algorithm algorithm;
  double p = 0.0;
  double q = 0.0;
  int rows = 0;
  int cols = 0;
  long trials = 0;
  double mean_error = 0.0;
  double stderr_error = 0.0;
  double wall_ms = 0.0;
};

struct ErrorTable {
  std::vector<ErrorRow> rows;  // sorted by (algorithm name, p)
};

// Hamming error of one algorithm on one sampled instance. The edge-only
// first stage reports the error of the better sign; the oracle is exhaustive
// maximization of the full objective.
int trial_error(Algorithm a, const GridGraph& g, const Labeling& truth,
                const SignedObservations& obs, double p, double q,
                const InferenceLimits& limits);

// Trials run in parallel; sums are taken in trial order.
ErrorTable run_experiment(const ExperimentConfig& cfg);
ErrorTable run_experiment_serial(const ExperimentConfig& cfg);

// Header "algorithm,p,q,rows,cols,trials,mean_error,stderr,wall_ms".
void emit_csv(const ErrorTable& table, std::ostream& out);
void emit_csv(const ErrorTable& table, const std::string& path);

// SVG line chart of mean error against p, one polyline per algorithm.
void emit_plot(const ErrorTable& table, std::ostream& out);
void emit_plot(const ErrorTable& table, const std::string& path);

}  // namespace approxrec
