#pragma once

// Bit-packed truth table for a Boolean function on up to 24 variables.
//
// Input convention used everywhere in this library: the value at the point
// x = (x_1, ..., x_n) is stored at bit index sum_i x_i * 2^(i-1), so
// variable x_1 is the least significant bit of the index.  Variables are
// numbered from 1 in the public interface.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qsep/bits.hpp"
#include "qsep/errors.hpp"

namespace qsep {

class TruthTable {
 public:
  static constexpr int kMaxVars = 24;

  TruthTable() = default;  // empty placeholder; n() == 0
  explicit TruthTable(int n_vars) : n_(checked(n_vars)) {
    bits_.assign(word_count(), 0);
  }

  template <typename Fn>
  static TruthTable from_function(int n_vars, Fn&& fn) {
    TruthTable t(n_vars);
    for (uint32_t x = 0; x < t.size(); ++x)
      if (fn(x)) t.set(x, true);
    return t;
  }

  int n() const { return n_; }
  uint32_t size() const { return 1u << n_; }

  bool get(uint32_t x) const {
    return (bits_[x >> 6] >> (x & 63)) & 1ull;
  }
  void set(uint32_t x, bool v) {
    uint64_t m = 1ull << (x & 63);
    if (v)
      bits_[x >> 6] |= m;
    else
      bits_[x >> 6] &= ~m;
  }

  bool is_constant() const {
    uint64_t first = bits_[0] & 1ull ? ~0ull : 0ull;
    for (size_t i = 0; i + 1 < bits_.size(); ++i)
      if (bits_[i] != first) return false;
    return bits_.back() == (first & tail_mask());
  }

  uint32_t count_ones() const {
    uint32_t c = 0;
    for (uint64_t w : bits_) c += uint32_t(std::popcount(w));
    return c;
  }

  // Raw word access for the transform kernels.  Writers must keep the bits
  // beyond 2^n zero; mask_tail() restores that invariant after bulk writes.
  std::vector<uint64_t>& words() { return bits_; }
  const std::vector<uint64_t>& words() const { return bits_; }
  void mask_tail() { bits_.back() &= tail_mask(); }

  // Hex rendering of the table: most significant digit first, so the last
  // digit holds inputs 0..3.  Always (2^n + 3) / 4 digits.
  std::string to_hex() const {
    uint32_t digits = (size() + 3) / 4;
    std::string out(digits, '0');
    for (uint32_t d = 0; d < digits; ++d) {
      uint32_t nib = uint32_t(bits_[d >> 4] >> ((d & 15) * 4)) & 0xf;
      out[digits - 1 - d] = "0123456789abcdef"[nib];
    }
    return out;
  }

  static TruthTable from_hex(int n_vars, std::string_view hex) {
    TruthTable t(n_vars);
    uint32_t digits = (t.size() + 3) / 4;
    if (hex.empty() || hex.size() > digits)
      throw parse_error("truth table hex has wrong length for n=" +
                        std::to_string(n_vars));
    for (size_t i = 0; i < hex.size(); ++i) {
      char c = hex[hex.size() - 1 - i];
      uint64_t nib;
      if (c >= '0' && c <= '9')
        nib = uint64_t(c - '0');
      else if (c >= 'a' && c <= 'f')
        nib = uint64_t(c - 'a' + 10);
      else if (c >= 'A' && c <= 'F')
        nib = uint64_t(c - 'A' + 10);
      else
        throw parse_error(std::string("bad hex digit '") + c + "'");
      t.bits_[i >> 4] |= nib << ((i & 15) * 4);
    }
    t.mask_tail();
    return t;
  }

  friend bool operator==(const TruthTable& a, const TruthTable& b) {
    return a.n_ == b.n_ && a.bits_ == b.bits_;
  }

 private:
  static int checked(int n_vars) {
    if (n_vars < 1)
      throw std::invalid_argument("truth table needs at least one variable");
    if (n_vars > kMaxVars)
      throw cap_error("truth table width " + std::to_string(n_vars) +
                      " exceeds the cap of " + std::to_string(kMaxVars));
    return n_vars;
  }
  size_t word_count() const { return size_t((size() + 63) / 64); }
  uint64_t tail_mask() const {
    return n_ >= 6 ? ~0ull : (1ull << size()) - 1ull;
  }

  int n_ = 0;
  std::vector<uint64_t> bits_;
};

inline bool evaluate(const TruthTable& f, uint32_t x) { return f.get(x); }

}  // namespace qsep
