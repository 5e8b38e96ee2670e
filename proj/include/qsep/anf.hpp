#pragma once

// Algebraic normal form: a multilinear polynomial over GF(2), stored as the
// set of monomial masks (bit i-1 of a mask <=> variable x_i) plus the
// constant term.  Conversion to and from truth tables is the self-inverse
// XOR Moebius butterfly.  Also hosts the ANF text format used by the CLI:
// terms joined by '+', factors joined by '*', e.g. "x1*x2 + x1*x3 + x2";
// "1" is the constant-one function and "0" the zero function.

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qsep/bits.hpp"
#include "qsep/errors.hpp"
#include "qsep/truth_table.hpp"

namespace qsep {

struct Anf {
  int n = 0;
  bool constant = false;        // the "+ 1" term
  std::vector<uint32_t> terms;  // non-constant monomials, canonical order

  // Canonical order: higher degree first, then ascending mask value.
  static bool term_less(uint32_t a, uint32_t b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa > pb : a < b;
  }

  // Sort, and cancel monomials that appear an even number of times.
  void canonicalize() {
    std::sort(terms.begin(), terms.end());
    std::vector<uint32_t> kept;
    for (size_t i = 0; i < terms.size();) {
      size_t j = i;
      while (j < terms.size() && terms[j] == terms[i]) ++j;
      if ((j - i) & 1) kept.push_back(terms[i]);
      i = j;
    }
    std::sort(kept.begin(), kept.end(), term_less);
    terms = std::move(kept);
  }

  // Degree of the zero or constant function is 0.
  int degree() const {
    return terms.empty() ? 0 : std::popcount(terms.front());
  }

  friend bool operator==(const Anf& a, const Anf& b) = default;
};

// In-place XOR butterfly: lambda[x] = XOR over y subset of x of w[y].
// Self-inverse, so the same kernel converts both directions.
inline void xor_mobius_inplace(std::vector<uint64_t>& w, int n) {
  for (int v = 0; v < n && v < 6; ++v)
    for (auto& word : w) word ^= (word & kLowHalfMask[v]) << (1 << v);
  for (int v = 6; v < n; ++v) {
    size_t stride = size_t(1) << (v - 6);
    for (size_t base = 0; base < w.size(); base += 2 * stride)
      for (size_t k = 0; k < stride; ++k) w[base + stride + k] ^= w[base + k];
  }
}

inline Anf anf_from_tt(const TruthTable& f) {
  std::vector<uint64_t> w = f.words();
  xor_mobius_inplace(w, f.n());
  Anf a;
  a.n = f.n();
  a.constant = w[0] & 1ull;
  for (uint32_t x = 1; x < f.size(); ++x)
    if ((w[x >> 6] >> (x & 63)) & 1ull) a.terms.push_back(x);
  std::sort(a.terms.begin(), a.terms.end(), Anf::term_less);
  return a;
}

inline TruthTable tt_from_anf(const Anf& a) {
  TruthTable t(a.n);
  auto& w = t.words();
  if (a.constant) w[0] |= 1ull;
  for (uint32_t m : a.terms) {
    if (m == 0 || m >= t.size())
      throw std::invalid_argument("ANF monomial out of range for n=" +
                                  std::to_string(a.n));
    w[m >> 6] ^= 1ull << (m & 63);
  }
  xor_mobius_inplace(w, a.n);
  return t;
}

inline int algebraic_degree(const TruthTable& f) {
  return anf_from_tt(f).degree();
}

inline std::string anf_to_text(const Anf& a) {
  if (a.terms.empty()) return a.constant ? "1" : "0";
  std::string out;
  for (uint32_t m : a.terms) {
    if (!out.empty()) out += " + ";
    bool first = true;
    for (int i = 0; i < a.n; ++i)
      if (m >> i & 1) {
        if (!first) out += '*';
        out += 'x';
        out += std::to_string(i + 1);
        first = false;
      }
  }
  if (a.constant) out += " + 1";
  return out;
}

// Parse the ANF text format.  The variable count is the largest index that
// appears (n_min can widen it, e.g. to embed "x2" into three variables).
inline Anf anf_from_text(std::string_view text, int n_min = 0) {
  Anf a;
  size_t pos = 0;
  auto fail = [&](const std::string& what) {
    throw parse_error("ANF text, column " + std::to_string(pos + 1) + ": " +
                      what);
  };
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(uint8_t(text[pos]))) ++pos;
  };
  int max_var = 0;
  bool expect_term = true;
  while (true) {
    skip_ws();
    if (pos >= text.size()) {
      if (expect_term) fail("expected a term");
      break;
    }
    if (!expect_term) {
      if (text[pos] != '+') fail("expected '+'");
      ++pos;
      expect_term = true;
      continue;
    }
    // One term: "0", "1", or x<i>[*x<j>...]
    if (text[pos] == '0' || text[pos] == '1') {
      if (text[pos] == '1') a.constant = !a.constant;
      ++pos;
      expect_term = false;
      continue;
    }
    uint32_t mask = 0;
    while (true) {
      if (pos >= text.size() || text[pos] != 'x') fail("expected 'x<i>'");
      ++pos;
      size_t start = pos;
      while (pos < text.size() && std::isdigit(uint8_t(text[pos]))) ++pos;
      if (pos == start) fail("expected a variable index");
      int idx = std::stoi(std::string(text.substr(start, pos - start)));
      if (idx < 1 || idx > TruthTable::kMaxVars)
        fail("variable index out of range");
      mask |= 1u << (idx - 1);
      max_var = std::max(max_var, idx);
      skip_ws();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        skip_ws();
        continue;
      }
      break;
    }
    a.terms.push_back(mask);
    expect_term = false;
  }
  a.n = std::max(std::max(max_var, n_min), 1);
  a.canonicalize();
  return a;
}

}  // namespace qsep
