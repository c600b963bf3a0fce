#include "approxrec/metrics.hpp"

#include <bit>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/one_bit_color_map.hpp>
#include <boost/graph/stoer_wagner_min_cut.hpp>
#include <boost/property_map/property_map.hpp>

#include "approxrec/errors.hpp"

namespace approxrec {

Rational Rational::reduced(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw ConfigError("rational needs a positive denominator");
  const std::int64_t g = std::gcd(num, den);
  return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

std::ostream& operator<<(std::ostream& out, const Rational& r) {
  return out << r.num << '/' << r.den;
}

namespace {

struct ExpansionInput {
  int n;
  int d;
  std::vector<std::uint32_t> adjacency;  // neighbour bitmask per vertex
};

ExpansionInput prepare_expansion(const Graph& g, int cap) {
  const int n = g.num_vertices();
  if (n > cap) {
    throw CapacityError("expansion scan over " + std::to_string(n) +
                        " vertices exceeds cap " + std::to_string(cap));
  }
  if (n > 31) throw CapacityError("expansion scan limited to 31 vertices");
  if (n < 2 || !g.is_connected()) {
    throw ConfigError("expansion constant needs a connected graph");
  }
  const auto d = g.regular_degree();
  if (!d || *d == 0) throw ConfigError("expansion constant needs a regular graph");
  ExpansionInput in{n, *d, std::vector<std::uint32_t>(n, 0)};
  for (const Edge& e : g.edges()) {
    in.adjacency[e.u] |= 1u << e.v;
    in.adjacency[e.v] |= 1u << e.u;
  }
  return in;
}

// Best ratio over subsets whose mask lies in [first, last).
Rational scan(const ExpansionInput& in, std::uint32_t first,
              std::uint32_t last) {
  Rational best{std::numeric_limits<std::int32_t>::max(), 1};
  for (std::uint32_t mask = first; mask < last; ++mask) {
    const int size = std::popcount(mask);
    if (size == 0 || 2 * size > in.n) continue;
    int cut = 0;
    for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      cut += std::popcount(in.adjacency[v] & ~mask);
    }
    const Rational r{cut, static_cast<std::int64_t>(in.d) * size};
    if (r < best) best = r;
  }
  return best;
}

}  // namespace

Rational expansion_constant(const Graph& g, int cap) {
  const ExpansionInput in = prepare_expansion(g, cap);
  const std::uint32_t total = 1u << in.n;
  const std::uint32_t chunk = 1u << std::max(in.n - 6, 0);
  const int chunks = static_cast<int>((total + chunk - 1) / chunk);
  std::vector<Rational> partial(chunks);
#pragma omp parallel for schedule(dynamic)
  for (int c = 0; c < chunks; ++c) {
    const std::uint32_t first = static_cast<std::uint32_t>(c) * chunk;
    partial[c] = scan(in, first, std::min(first + chunk, total));
  }
  Rational best = partial.front();
  for (const Rational& r : partial) {
    if (r < best) best = r;
  }
  return Rational::reduced(best.num, best.den);
}

Rational expansion_constant_serial(const Graph& g, int cap) {
  const ExpansionInput in = prepare_expansion(g, cap);
  const Rational best = scan(in, 0, 1u << in.n);
  return Rational::reduced(best.num, best.den);
}

int min_cut(const Graph& g) {
  if (g.num_vertices() < 2 || !g.is_connected()) {
    throw ConfigError("min cut needs a connected graph with 2+ vertices");
  }
  using BoostGraph =
      boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                            boost::no_property,
                            boost::property<boost::edge_weight_t, int>>;
  BoostGraph bg(g.num_vertices());
  for (const Edge& e : g.edges()) boost::add_edge(e.u, e.v, 1, bg);
  return boost::stoer_wagner_min_cut(bg, boost::get(boost::edge_weight, bg));
}

}  // namespace approxrec
