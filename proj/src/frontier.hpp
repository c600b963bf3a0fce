#pragma once

// Column-major transfer sweep over a grid. The state is the label of the most
// recently assigned vertex in every row (bit r = row r, 1 = +1), so it has
// 2^rows values. Assigning vertex (r, c) is a butterfly on bit r: the old bit
// is the left neighbour (r, c - 1), bit r - 1 is the up neighbour (r - 1, c).

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <type_traits>
#include <vector>

#include "approxrec/graph.hpp"

namespace approxrec::detail {

// Additive weights for one vertex. "same" applies when the two endpoint
// labels are equal, "diff" otherwise.
template <class T>
struct CellWeights {
  T left_same{};
  T left_diff{};
  T up_same{};
  T up_diff{};
  T node_plus{};
  T node_minus{};
  bool has_left = false;
};

// Edge weights from an observed sign: agreement with the observation earns
// `agree`, disagreement `disagree`.
template <class T>
void set_edge(T& same, T& diff, std::int8_t sign, T agree, T disagree) {
  same = sign > 0 ? agree : disagree;
  diff = sign > 0 ? disagree : agree;
}

template <class T>
std::vector<CellWeights<T>> make_weights(const GridGraph& g,
                                         std::span<const std::int8_t> edge_obs,
                                         std::span<const std::int8_t> node_obs,
                                         T edge_agree, T edge_disagree,
                                         T node_agree, T node_disagree) {
  std::vector<CellWeights<T>> w(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    const int r = g.row(v);
    const int c = g.col(v);
    CellWeights<T>& cw = w[v];
    if (c > 0) {
      cw.has_left = true;
      set_edge(cw.left_same, cw.left_diff,
               edge_obs[g.right_edge(g.vertex(r, c - 1))], edge_agree,
               edge_disagree);
    }
    if (r > 0) {
      set_edge(cw.up_same, cw.up_diff,
               edge_obs[g.down_edge(g.vertex(r - 1, c))], edge_agree,
               edge_disagree);
    }
    if (!node_obs.empty()) {
      cw.node_plus = node_obs[v] > 0 ? node_agree : node_disagree;
      cw.node_minus = node_obs[v] > 0 ? node_disagree : node_agree;
    }
  }
  return w;
}

template <class T>
struct MaxPlus {
  static T combine(T a, T b) { return a >= b ? a : b; }
};

struct LogSumExp {
  static double combine(double a, double b) {
    const double hi = a >= b ? a : b;
    const double lo = a >= b ? b : a;
    return hi + std::log1p(std::exp(lo - hi));
  }
};

// True when x beats y by more than eps. Integer scores compare exactly,
// which keeps the comparison in the element width.
template <class T>
inline bool wins(T x, T y, T eps) {
  if constexpr (std::is_floating_point_v<T>) {
    return x > y + eps;
  } else {
    return x > y;
  }
}

// Applies the butterfly for row r to the pairs (s, s | 1 << r) with s in
// [lo, hi), lo and hi aligned to 2^(r+1). When `choice` is non-null it
// receives, per output state, 1 when the left neighbour label +1 won.
template <class T, class Semiring>
void butterfly(T* dp, std::uint8_t* choice, std::size_t lo, std::size_t hi,
               int r, const CellWeights<T>& w, T eps = T{}) {
  const std::size_t bit = std::size_t{1} << r;
  const std::size_t half = r > 0 ? bit >> 1 : 1;
  const std::size_t runs = r > 0 ? 2 : 1;
  const T ls = w.left_same;
  const T ld = w.left_diff;
  for (std::size_t base = lo; base < hi; base += 2 * bit) {
    for (std::size_t u = 0; u < runs; ++u) {
      const std::size_t off = base + u * half;
      T* a = dp + off;
      T* b = dp + off + bit;
      const T up0 = r == 0 ? T{} : (u == 0 ? w.up_same : w.up_diff);
      const T up1 = r == 0 ? T{} : (u == 1 ? w.up_same : w.up_diff);
      const T add0 = static_cast<T>(up0 + w.node_minus);
      const T add1 = static_cast<T>(up1 + w.node_plus);
      if (!w.has_left) {
        for (std::size_t j = 0; j < half; ++j) {
          const T x = a[j];
          a[j] = static_cast<T>(x + add0);
          b[j] = static_cast<T>(x + add1);
        }
        if (choice != nullptr) {
          std::memset(choice + (off - lo), 0, half);
          std::memset(choice + (off + bit - lo), 0, half);
        }
        continue;
      }
      if (choice != nullptr) {
        std::uint8_t* ca = choice + (off - lo);
        std::uint8_t* cb = choice + (off + bit - lo);
        for (std::size_t j = 0; j < half; ++j) {
          const T x = a[j];
          const T y = b[j];
          const T s0 = static_cast<T>(x + ls);
          const T d0 = static_cast<T>(y + ld);
          const T s1 = static_cast<T>(x + ld);
          const T d1 = static_cast<T>(y + ls);
          const bool take0 = wins(d0, s0, eps);
          const bool take1 = wins(d1, s1, eps);
          ca[j] = take0;
          cb[j] = take1;
          a[j] = static_cast<T>((take0 ? d0 : s0) + add0);
          b[j] = static_cast<T>((take1 ? d1 : s1) + add1);
        }
      } else {
        for (std::size_t j = 0; j < half; ++j) {
          const T x = a[j];
          const T y = b[j];
          a[j] = static_cast<T>(Semiring::combine(x + ls, y + ld) + add0);
          b[j] = static_cast<T>(Semiring::combine(x + ld, y + ls) + add1);
        }
      }
    }
  }
}

// Packs n 0/1 bytes into bits, LSB first. n is a multiple of 64 or below 64.
inline void pack_bits(const std::uint8_t* bytes, std::size_t n,
                      std::uint64_t* words) {
  if (n < 64) {
    std::uint64_t m = 0;
    for (std::size_t k = 0; k < n; ++k) m |= std::uint64_t{bytes[k]} << k;
    words[0] = m;
    return;
  }
  for (std::size_t w = 0; w < n / 64; ++w) {
    std::uint64_t m = 0;
    for (std::size_t k = 0; k < 8; ++k) {
      std::uint64_t chunk;
      std::memcpy(&chunk, bytes + 64 * w + 8 * k, 8);
      // Gathers the low bit of each byte into the top byte.
      const std::uint64_t packed = (chunk * 0x0102040810204080ULL) >> 56;
      m |= packed << (8 * k);
    }
    words[w] = m;
  }
}

// Rows below kTileBits touch pairs closer than a vector width. For them the
// sweep works on 32x32 tiles of 1024 consecutive states, transposed so that
// the low 5 bits index rows of the tile and each pair becomes two contiguous
// 32-wide rows. Choice bits of those rows are stored in the tile layout.
inline constexpr int kTileBits = 5;
inline constexpr std::size_t kTileSide = std::size_t{1} << kTileBits;
inline constexpr std::size_t kTileStates = kTileSide * kTileSide;

// Position of state s in the tile-transposed choice layout.
inline std::uint64_t tile_index(std::uint64_t s) {
  const std::uint64_t low = kTileSide - 1;
  return (s & ~std::uint64_t{kTileStates - 1}) | ((s & low) << kTileBits) |
         ((s >> kTileBits) & low);
}

// Applies rows 0..kTileBits-1 to the 1024 states starting at base.
template <class T>
void low_rows_tile(T* dp, std::size_t base, const CellWeights<T>* const* w,
                   std::uint64_t* const* choice_words, T eps) {
  alignas(64) T tile[kTileSide][kTileSide];
  alignas(64) std::uint8_t ch[kTileStates];
  for (std::size_t h = 0; h < kTileSide; ++h) {
    for (std::size_t l = 0; l < kTileSide; ++l) {
      tile[l][h] = dp[base + h * kTileSide + l];
    }
  }
  for (int r = 0; r < kTileBits; ++r) {
    const CellWeights<T>& cw = *w[r];
    const std::size_t bit = std::size_t{1} << r;
    for (std::size_t l = 0; l < kTileSide; ++l) {
      if (l & bit) continue;
      const bool up = r > 0 && ((l >> (r - 1)) & 1);
      const T up0 = r == 0 ? T{} : (up ? cw.up_diff : cw.up_same);
      const T up1 = r == 0 ? T{} : (up ? cw.up_same : cw.up_diff);
      const T add0 = static_cast<T>(up0 + cw.node_minus);
      const T add1 = static_cast<T>(up1 + cw.node_plus);
      T* a = tile[l];
      T* b = tile[l | bit];
      std::uint8_t* ca = ch + l * kTileSide;
      std::uint8_t* cb = ch + (l | bit) * kTileSide;
      if (!cw.has_left) {
        for (std::size_t j = 0; j < kTileSide; ++j) {
          const T x = a[j];
          a[j] = static_cast<T>(x + add0);
          b[j] = static_cast<T>(x + add1);
          ca[j] = 0;
          cb[j] = 0;
        }
        continue;
      }
      const T ls = cw.left_same;
      const T ld = cw.left_diff;
      for (std::size_t j = 0; j < kTileSide; ++j) {
        const T x = a[j];
        const T y = b[j];
        const T s0 = static_cast<T>(x + ls);
        const T d0 = static_cast<T>(y + ld);
        const T s1 = static_cast<T>(x + ld);
        const T d1 = static_cast<T>(y + ls);
        const bool take0 = wins(d0, s0, eps);
        const bool take1 = wins(d1, s1, eps);
        ca[j] = take0;
        cb[j] = take1;
        a[j] = static_cast<T>((take0 ? d0 : s0) + add0);
        b[j] = static_cast<T>((take1 ? d1 : s1) + add1);
      }
    }
    pack_bits(ch, kTileStates, choice_words[r] + base / 64);
  }
  for (std::size_t h = 0; h < kTileSide; ++h) {
    for (std::size_t l = 0; l < kTileSide; ++l) {
      dp[base + h * kTileSide + l] = tile[l][h];
    }
  }
}

// Reusable buffers for max sweeps.
template <class T>
struct MaxWorkspace {
  std::vector<T> dp;
  std::vector<std::uint8_t> scratch;
  std::vector<std::uint64_t> choices;
};

struct MaxSweepResult {
  std::vector<std::int8_t> labels;
  std::uint64_t final_state = 0;
};

// Exact argmax of the sum of cell weights. Ties prefer the left label -1
// during backtracking and the smallest final state; for floating types a
// candidate must win by more than `eps`.
template <class T>
MaxSweepResult max_sweep(const GridGraph& g,
                         const std::vector<CellWeights<T>>& weights, T eps,
                         MaxWorkspace<T>& ws) {
  const int rows = g.rows();
  const int cols = g.cols();
  const std::size_t states = std::size_t{1} << rows;
  const std::size_t words = std::max<std::size_t>(states / 64, 1);
  // Rows below block_bits are swept one cache-sized block at a time.
  constexpr std::size_t kBlockBytes = std::size_t{1} << 17;
  const int block_bits = std::min(
      rows, std::max(6, static_cast<int>(std::bit_width(kBlockBytes / sizeof(T))) - 1));
  const std::size_t block = std::size_t{1} << block_bits;

  ws.dp.assign(states, T{});
  ws.scratch.resize(states);
  ws.choices.resize(words * g.num_vertices());
  T* dp = ws.dp.data();
  std::uint8_t* scratch = ws.scratch.data();

  auto choice_words = [&](Vertex v) { return ws.choices.data() + words * v; };
  const bool tiled = rows >= 2 * kTileBits;
  const int first_row = tiled ? kTileBits : 0;
  for (int c = 0; c < cols; ++c) {
    const CellWeights<T>* tile_weights[kTileBits] = {};
    std::uint64_t* tile_choices[kTileBits] = {};
    if (tiled) {
      for (int r = 0; r < kTileBits; ++r) {
        tile_weights[r] = &weights[g.vertex(r, c)];
        tile_choices[r] = choice_words(g.vertex(r, c));
      }
    }
    for (std::size_t lo = 0; lo < states; lo += block) {
      if (tiled) {
        for (std::size_t t = lo; t < lo + block; t += kTileStates) {
          low_rows_tile(dp, t, tile_weights, tile_choices, eps);
        }
      }
      for (int r = first_row; r < block_bits; ++r) {
        const Vertex v = g.vertex(r, c);
        butterfly<T, MaxPlus<T>>(dp, scratch, lo, lo + block, r, weights[v],
                                 eps);
        pack_bits(scratch, block, choice_words(v) + lo / 64);
      }
    }
    for (int r = block_bits; r < rows; ++r) {
      const Vertex v = g.vertex(r, c);
      const std::size_t span = std::size_t{2} << r;
      for (std::size_t lo = 0; lo < states; lo += span) {
        butterfly<T, MaxPlus<T>>(dp, scratch, lo, lo + span, r, weights[v],
                                 eps);
        pack_bits(scratch, span, choice_words(v) + lo / 64);
      }
    }
  }

  std::uint64_t best = 0;
  for (std::uint64_t s = 1; s < states; ++s) {
    if (wins(dp[s], dp[best], eps)) best = s;
  }

  MaxSweepResult out;
  out.final_state = best;
  out.labels.assign(g.num_vertices(), 0);
  std::uint64_t s = best;
  for (int c = cols - 1; c >= 0; --c) {
    for (int r = rows - 1; r >= 0; --r) {
      const Vertex v = g.vertex(r, c);
      const std::uint64_t bit = std::uint64_t{1} << r;
      out.labels[v] = (s & bit) ? 1 : -1;
      const std::uint64_t at = r < first_row ? tile_index(s) : s;
      const std::uint64_t left = (choice_words(v)[at / 64] >> (at % 64)) & 1;
      s = (s & ~bit) | (left << r);
    }
  }
  return out;
}

// Per-vertex log P(label = +1) - log P(label = -1) under the product of
// exp(cell weights), by forward/backward sweeps in the log domain.
std::vector<double> log_odds_sweep(const GridGraph& g,
                                   const std::vector<CellWeights<double>>& w);

}  // namespace approxrec::detail
