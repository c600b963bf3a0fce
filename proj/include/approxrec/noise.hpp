#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "approxrec/graph.hpp"

namespace approxrec {

// A +-1 value per vertex.
class Labeling {
 public:
  Labeling() = default;
  // Throws ConfigError on entries other than -1 and +1.
  explicit Labeling(std::vector<std::int8_t> values);
  static Labeling constant(int n, std::int8_t value);

  int size() const { return static_cast<int>(values_.size()); }
  std::int8_t operator[](Vertex v) const { return values_[v]; }
  void set(Vertex v, std::int8_t value);
  std::span<const std::int8_t> values() const { return values_; }
  Labeling negated() const;

  friend bool operator==(const Labeling&, const Labeling&) = default;

 private:
  std::vector<std::int8_t> values_;
};

// The observed signs, the only thing inference routines are given.
struct SignedObservations {
  std::vector<std::int8_t> edge;  // X_uv by edge id
  std::vector<std::int8_t> node;  // X_v by vertex

  friend bool operator==(const SignedObservations&,
                         const SignedObservations&) = default;
};

// One sampled instance together with the corruption that produced it.
struct Observations {
  SignedObservations signs;
  std::vector<std::uint8_t> bad_edges;  // 1 where the edge was corrupted
  std::vector<std::uint8_t> bad_nodes;

  int num_bad_edges() const;
  int num_bad_nodes() const;
};

struct AdversaryContext {
  const Graph& graph;
  const Labeling& truth;
  std::span<const std::uint8_t> bad_edges;
  std::span<const std::uint8_t> bad_nodes;
  std::uint64_t seed;
};

// Chooses labels for corrupted elements by writing into `signs`, which
// arrives holding the consistent-flip labels. Writes to uncorrupted
// elements are discarded.
using AdversaryRule =
    std::function<void(const AdversaryContext&, SignedObservations& signs)>;

// Corrupted elements get an independent uniform sign.
AdversaryRule random_label_adversary();

struct NoiseParams {
  double p = 0.0;  // edge corruption probability
  double q = 0.0;  // node corruption probability
  AdversaryRule adversary;  // empty: every corrupted element is negated
};

// Which elements are corrupted depends only on (seed, element id, p or q);
// the adversary only picks their labels.
Observations sample_observations(const Graph& g, const Labeling& truth,
                                 const NoiseParams& params, std::uint64_t seed);

// Chessboard colouring with (row + col) even as black. Black vertices are +1,
// white vertices independent uniform signs.
Labeling checkerboard_truth(const GridGraph& g, std::uint64_t seed);
inline bool is_black(const GridGraph& g, Vertex v) {
  return (g.row(v) + g.col(v)) % 2 == 0;
}
Labeling random_truth(int n, std::uint64_t seed);

int hamming_error(const Labeling& pred, const Labeling& truth);
// Error of the better of pred and -pred.
int sign_symmetric_error(const Labeling& pred, const Labeling& truth);

// Lines "node v x" and "edge u v x".
void write_observations(std::ostream& out, const Graph& g,
                        const SignedObservations& obs);
SignedObservations read_observations(std::istream& in, const Graph& g);
// Whitespace-separated +-1 values, one per line.
void write_labeling(std::ostream& out, const Labeling& y);
Labeling read_labeling(std::istream& in);

}  // namespace approxrec
