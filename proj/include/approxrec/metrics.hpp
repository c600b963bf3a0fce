#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>

#include "approxrec/graph.hpp"

namespace approxrec {

// Non-negative reduced fraction.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational reduced(std::int64_t num, std::int64_t den);
  double value() const { return static_cast<double>(num) / den; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    return a.num * b.den <=> b.num * a.den;
  }
};

std::ostream& operator<<(std::ostream& out, const Rational& r);

inline constexpr int kExpansionCap = 20;

// min over non-empty S with |S| <= N/2 of |boundary(S)| / (d |S|), by
// exhaustive subset scan. Requires a connected d-regular graph.
Rational expansion_constant(const Graph& g, int cap = kExpansionCap);
Rational expansion_constant_serial(const Graph& g, int cap = kExpansionCap);

// Global minimum edge cut of a connected graph.
int min_cut(const Graph& g);

}  // namespace approxrec
