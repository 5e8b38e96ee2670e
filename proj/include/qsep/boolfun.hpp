#pragma once

// Pointwise analysis of truth tables: influencing variables and the two
// restriction operators (fix a variable; identify a variable with another
// one up to complement).  Restriction results are re-indexed onto 1..n-1,
// and carry the map from new indices back to the caller's original ones so
// certificates can be phrased in the original variable names.

#include <cstdint>
#include <vector>

#include "qsep/bits.hpp"
#include "qsep/truth_table.hpp"

namespace qsep {

// True iff f depends on x_i (the two cofactors differ).
inline bool depends_on(const TruthTable& f, int i) {
  if (i < 1 || i > f.n()) throw std::invalid_argument("variable index");
  int v = i - 1;
  const auto& w = f.words();
  if (v < 6) {
    int sh = 1 << v;
    for (uint64_t word : w)
      if (((word >> sh) ^ word) & kLowHalfMask[v]) return true;
    return false;
  }
  size_t stride = size_t(1) << (v - 6);
  for (size_t base = 0; base < w.size(); base += 2 * stride)
    for (size_t k = 0; k < stride; ++k)
      if (w[base + k] != w[base + stride + k]) return true;
  return false;
}

// Sorted list of variables (1-based) that f depends on; this coincides with
// the variables appearing in the ANF.
inline std::vector<int> influencing_variables(const TruthTable& f) {
  std::vector<int> vars;
  for (int i = 1; i <= f.n(); ++i)
    if (depends_on(f, i)) vars.push_back(i);
  return vars;
}

inline int influencing_count(const TruthTable& f) {
  return int(influencing_variables(f).size());
}

// A restriction result: the table on the surviving variables, re-indexed to
// 1..table.n(), plus vars[t-1] = original index of the new variable t.
struct Subfunction {
  TruthTable table;
  std::vector<int> vars;
};

// Fix x_i := b.  The result has n-1 variables.
inline Subfunction restrict_var(const TruthTable& f, int i, bool b) {
  if (i < 1 || i > f.n()) throw std::invalid_argument("variable index");
  if (f.n() < 2)
    throw std::invalid_argument("cannot restrict below one variable");
  Subfunction s;
  s.table = TruthTable(f.n() - 1);
  int pos = i - 1;
  for (uint32_t x = 0; x < s.table.size(); ++x)
    if (f.get(insert_index_bit(x, pos, b ? 1u : 0u))) s.table.set(x, true);
  for (int v = 1; v <= f.n(); ++v)
    if (v != i) s.vars.push_back(v);
  return s;
}

// Identify x_j := x_i XOR b (the outcome-b branch of a parity query on
// x_i, x_j).  Variable j is eliminated; the result has n-1 variables.
inline Subfunction restrict_parity(const TruthTable& f, int i, int j, bool b) {
  if (i < 1 || i > f.n() || j < 1 || j > f.n())
    throw std::invalid_argument("variable index");
  if (i == j) throw std::invalid_argument("parity restriction needs i != j");
  Subfunction s;
  s.table = TruthTable(f.n() - 1);
  int jpos = j - 1;
  // Position of x_i in the reduced index space (j has been removed).
  int ipos_reduced = i < j ? i - 1 : i - 2;
  for (uint32_t x = 0; x < s.table.size(); ++x) {
    uint32_t xi = (x >> ipos_reduced) & 1u;
    if (f.get(insert_index_bit(x, jpos, xi ^ (b ? 1u : 0u))))
      s.table.set(x, true);
  }
  for (int v = 1; v <= f.n(); ++v)
    if (v != j) s.vars.push_back(v);
  return s;
}

}  // namespace qsep
