#pragma once

// Bit-level helpers shared across the library: masks for the in-word
// butterfly transforms and index surgery used when variables are inserted
// into or removed from packed truth tables.

#include <bit>
#include <cassert>
#include <cstdint>

namespace qsep {

// Bits of a 64-bit table word whose index has bit v (v < 6) equal to zero.
inline constexpr uint64_t kLowHalfMask[6] = {
    0x5555555555555555ull, 0x3333333333333333ull, 0x0f0f0f0f0f0f0f0full,
    0x00ff00ff00ff00ffull, 0x0000ffff0000ffffull, 0x00000000ffffffffull,
};

// Smallest m with 2^m >= v.  ceil_log2(1) == 0.
inline int ceil_log2(uint64_t v) {
  assert(v >= 1);
  return 64 - std::countl_zero(v - 1);
}

// Insert a bit with the given value at position pos, shifting higher bits up.
inline uint32_t insert_index_bit(uint32_t x, int pos, uint32_t bit) {
  uint32_t low = x & ((1u << pos) - 1u);
  return low | (bit << pos) | ((x >> pos) << (pos + 1));
}

// Drop the bit at position pos, shifting higher bits down.
inline uint32_t remove_index_bit(uint32_t x, int pos) {
  uint32_t low = x & ((1u << pos) - 1u);
  return low | ((x >> (pos + 1)) << pos);
}

}  // namespace qsep
