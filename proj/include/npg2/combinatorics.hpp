#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace npg2 {

// Fixed enumeration of index subsets of {0,...,6}. Degree-p coefficients of a
// form are stored densely in the order subsets() returns, which is increasing
// bitmask order (equivalently colex order on the sorted index tuples).
namespace combi {

constexpr int kDim = 7;

constexpr std::array<int, 8> kBinom = {1, 7, 21, 35, 35, 21, 7, 1};

inline const std::vector<std::vector<uint8_t>>& masks_by_degree() {
  static const std::vector<std::vector<uint8_t>> table = [] {
    std::vector<std::vector<uint8_t>> t(kDim + 1);
    for (int m = 0; m < (1 << kDim); ++m) {
      t[__builtin_popcount(m)].push_back(static_cast<uint8_t>(m));
    }
    return t;
  }();
  return table;
}

// mask -> dense index within its degree
inline int mask_index(uint8_t mask) {
  static const std::array<int, 128> table = [] {
    std::array<int, 128> t{};
    for (int p = 0; p <= kDim; ++p) {
      const auto& ms = masks_by_degree()[p];
      for (int i = 0; i < static_cast<int>(ms.size()); ++i) t[ms[i]] = i;
    }
    return t;
  }();
  return table[mask];
}

// Sign of e_A ^ e_B = sign * e_{A|B} (A, B disjoint, each sorted increasing).
// Counts inversions between the concatenated tuples.
inline int wedge_sign(uint8_t a, uint8_t b) {
  int sign = 1;
  for (int j = 0; j < kDim; ++j) {
    if (!(b & (1 << j))) continue;
    // number of elements of A strictly greater than j
    int higher = __builtin_popcount(a >> (j + 1));
    if (higher & 1) sign = -sign;
  }
  return sign;
}

// Sign of removing index i from sorted tuple S: (-1)^{position of i in S}.
inline int interior_sign(uint8_t s, int i) {
  int below = __builtin_popcount(s & ((1 << i) - 1));
  return (below & 1) ? -1 : 1;
}

}  // namespace combi
}  // namespace npg2
