#pragma once

// Equivalence under input permutation, input negation, and output
// complement.  A witness (perm, neg_mask, complement) maps f onto g as
//
//   g(x) = f(y) ^ complement,   bit j-1 of y = bit perm[j-1]-1 of x,
//                               XOR'd with bit j-1 of neg_mask.
//
// The search is brute force over all n! * 2^n * 2 witnesses and is capped
// at 6 variables.  The transforms preserve query complexity, degree and
// nonlinearity, which the tests lean on.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "qsep/errors.hpp"
#include "qsep/truth_table.hpp"

namespace qsep {

struct PnpWitness {
  std::vector<int> perm;  // perm[j-1] in 1..n; source variable for slot j
  uint32_t neg_mask = 0;  // bit j-1 set => x_j complemented before lookup
  bool complement = false;

  friend bool operator==(const PnpWitness&, const PnpWitness&) = default;
};

inline TruthTable apply_pnp(const TruthTable& f, const PnpWitness& w) {
  if (int(w.perm.size()) != f.n())
    throw std::invalid_argument("witness arity mismatch");
  TruthTable g(f.n());
  for (uint32_t x = 0; x < f.size(); ++x) {
    uint32_t y = 0;
    for (int j = 0; j < f.n(); ++j)
      y |= ((x >> (w.perm[j] - 1)) & 1u) << j;
    bool v = f.get(y ^ w.neg_mask) ^ w.complement;
    if (v) g.set(x, true);
  }
  return g;
}

inline std::optional<PnpWitness> pnp_equivalent(const TruthTable& f,
                                                const TruthTable& g) {
  constexpr int kMax = 6;
  if (f.n() != g.n()) return std::nullopt;
  if (f.n() > kMax)
    throw cap_error("pnp equivalence search capped at " +
                    std::to_string(kMax) + " variables");
  int n = f.n();
  uint32_t sz = f.size();
  // Weight must match under one of the two output polarities.
  uint32_t wf = f.count_ones(), wg = g.count_ones();
  if (wf != wg && sz - wf != wg) return std::nullopt;

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<uint32_t> px(sz);
  do {
    // px[x] = the permuted point looked up before negation is applied.
    for (uint32_t x = 0; x < sz; ++x) {
      uint32_t y = 0;
      for (int j = 0; j < n; ++j) y |= ((x >> (perm[j] - 1)) & 1u) << j;
      px[x] = y;
    }
    for (uint32_t neg = 0; neg < sz; ++neg)
      for (int c = 0; c < 2; ++c) {
        bool ok = true;
        for (uint32_t x = 0; x < sz && ok; ++x)
          ok = (f.get(px[x] ^ neg) ^ (c != 0)) == g.get(x);
        if (ok) return PnpWitness{perm, neg, c != 0};
      }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

}  // namespace qsep
