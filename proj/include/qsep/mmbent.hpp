#pragma once

// Maiorana–McFarland bent functions f(x, y) = phi(x)·y xor h(x) on n = 2m
// variables: construction from a bijection phi on {0,1}^m and an arbitrary
// h, bentness checking, and the two canonical query algorithms — a
// deterministic tree of depth exactly n and a parity tree of depth at most
// ceil(3n/4).
//
// Variable blocks: x = (v_1..v_m) and y = (v_{m+1}..v_n); phi is stored as
// a permutation table indexed by the integer encoding of x (LSB-first), and
// y_i corresponds to v_{m+i}.

#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "qsep/decision_tree.hpp"
#include "qsep/errors.hpp"
#include "qsep/parity_tree.hpp"
#include "qsep/truth_table.hpp"
#include "qsep/walsh.hpp"

namespace qsep {

struct MMBentSpec {
  int n = 0;                  // even, 2..12
  std::vector<uint32_t> phi;  // permutation of 0..2^{n/2}-1
  TruthTable h;               // on n/2 variables

  void validate() const {
    if (n < 2 || n % 2 != 0)
      throw std::invalid_argument("spec needs even n >= 2");
    if (n > 12)
      throw cap_error("Maiorana-McFarland construction capped at n = 12");
    size_t half = size_t(1) << (n / 2);
    if (phi.size() != half)
      throw std::invalid_argument("phi must have length 2^(n/2)");
    std::vector<bool> seen(half, false);
    for (uint32_t v : phi) {
      if (v >= half || seen[v])
        throw std::invalid_argument("phi is not a permutation");
      seen[v] = true;
    }
    if (h.n() != n / 2)
      throw std::invalid_argument("h must be on n/2 variables");
  }
};

inline MMBentSpec mm_identity_spec(int n, TruthTable h = {}) {
  MMBentSpec spec;
  spec.n = n;
  if (n >= 2 && n <= 24 && n % 2 == 0) {
    spec.phi.resize(size_t(1) << (n / 2));
    std::iota(spec.phi.begin(), spec.phi.end(), 0u);
    spec.h = h.n() == 0 ? TruthTable(n / 2) : std::move(h);
  }
  spec.validate();
  return spec;
}

inline TruthTable mm_build(const MMBentSpec& spec) {
  spec.validate();
  int m = spec.n / 2;
  uint32_t xmask = (uint32_t(1) << m) - 1;
  return TruthTable::from_function(spec.n, [&](uint32_t v) {
    uint32_t ix = v & xmask, iy = v >> m;
    bool dot = (std::popcount(spec.phi[ix] & iy) & 1) != 0;
    return dot != spec.h.get(ix);  // parity(phi(x) & y) xor h(x)
  });
}

// Bent = flat Walsh spectrum: |W(a)| = 2^{n/2} everywhere.
inline bool is_bent(const TruthTable& f) {
  if (f.n() % 2 != 0) throw std::invalid_argument("bentness needs even n");
  WalshSpectrum w = walsh_transform(f);
  int32_t flat = int32_t(1) << (f.n() / 2);
  for (uint32_t a = 0; a < f.size(); ++a)
    if (w[a] != flat && w[a] != -flat) return false;
  return true;
}

namespace detail {

// Chain of single-variable queries over `vars`, leaf = xor of branch bits
// xor base; `acc` carries the xor collected so far.
inline DecisionTree::NodePtr xor_chain(const std::vector<int>& vars,
                                       size_t at, int acc, int base) {
  if (at == vars.size()) return DecisionTree::leaf(acc ^ base);
  return DecisionTree::node(vars[at], xor_chain(vars, at + 1, acc, base),
                            xor_chain(vars, at + 1, acc ^ 1, base));
}

inline ParityDecisionTree::NodePtr parity_chain(
    const std::vector<ParityQuery>& qs, size_t at, int acc, int base) {
  if (at == qs.size()) return ParityDecisionTree::leaf(acc ^ base);
  auto c0 = parity_chain(qs, at + 1, acc, base);
  auto c1 = parity_chain(qs, at + 1, acc ^ 1, base);
  if (qs[at].is_pair())
    return ParityDecisionTree::pair(qs[at].i, qs[at].j, c0, c1);
  return ParityDecisionTree::single(qs[at].i, c0, c1);
}

inline std::vector<int> mm_y_vars(const MMBentSpec& spec, uint32_t a) {
  std::vector<int> ys;
  int m = spec.n / 2;
  for (int i = 1; i <= m; ++i)
    if ((spec.phi[a] >> (i - 1)) & 1u) ys.push_back(m + i);
  return ys;
}

inline DecisionTree::NodePtr mm_x_block(const MMBentSpec& spec, int var,
                                        uint32_t a) {
  int m = spec.n / 2;
  if (var > m) {
    std::vector<int> ys = mm_y_vars(spec, a);
    return xor_chain(ys, 0, 0, spec.h.get(a) ? 1 : 0);
  }
  return DecisionTree::node(var, mm_x_block(spec, var + 1, a),
                            mm_x_block(spec, var + 1, a | (1u << (var - 1))));
}

inline ParityDecisionTree::NodePtr mm_x_block_parity(const MMBentSpec& spec,
                                                     int var, uint32_t a) {
  int m = spec.n / 2;
  if (var > m) {
    std::vector<int> ys = mm_y_vars(spec, a);
    std::vector<ParityQuery> qs;
    for (size_t t = 0; t + 1 < ys.size(); t += 2)
      qs.push_back(ParityQuery{ys[t], ys[t + 1]});
    if (ys.size() % 2 == 1) qs.push_back(ParityQuery{ys.back(), 0});
    return parity_chain(qs, 0, 0, spec.h.get(a) ? 1 : 0);
  }
  return ParityDecisionTree::single(
      var, mm_x_block_parity(spec, var + 1, a),
      mm_x_block_parity(spec, var + 1, a | (1u << (var - 1))));
}

}  // namespace detail

// Deterministic evaluation: query v_1..v_{n/2} in order, then exactly the
// y_i with phi(a)_i = 1 in ascending order; leaf = xor of the y branch bits
// xor h(a).  Depth = n/2 + max_a wt(phi(a)) = n for any bijection.
inline DecisionTree mm_classical_tree(const MMBentSpec& spec) {
  spec.validate();
  return DecisionTree{detail::mm_x_block(spec, 1, 0)};
}

// Parity variant: the selected y_i are consumed in ascending pairs (plus a
// lone single when the count is odd); leaf = xor of branch outcomes xor
// h(a).  Depth = n/2 + max_a ceil(wt(phi(a))/2) <= ceil(3n/4).
inline ParityDecisionTree mm_parity_tree(const MMBentSpec& spec) {
  spec.validate();
  return ParityDecisionTree{detail::mm_x_block_parity(spec, 1, 0)};
}

namespace detail {

// Pinned 64-bit generator so seeded specs are identical across platforms.
struct SplitMix64 {
  uint64_t state;
  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
};

}  // namespace detail

// Uniform random Maiorana-McFarland spec: Fisher-Yates permutation and
// random h, both driven by SplitMix64; deterministic given (n, seed).
inline MMBentSpec random_mm(int n, uint64_t seed) {
  if (n < 2 || n > 12 || n % 2 != 0)
    throw std::invalid_argument("random_mm needs even n in [2, 12]");
  detail::SplitMix64 rng{seed};
  MMBentSpec spec;
  spec.n = n;
  size_t half = size_t(1) << (n / 2);
  spec.phi.resize(half);
  std::iota(spec.phi.begin(), spec.phi.end(), 0u);
  for (size_t i = half - 1; i >= 1; --i)
    std::swap(spec.phi[i], spec.phi[rng.next() % (i + 1)]);
  spec.h = TruthTable(n / 2);
  for (size_t w = 0; w < spec.h.words().size(); ++w)
    spec.h.words()[w] = rng.next();
  spec.h.mask_tail();
  return spec;
}

inline nlohmann::json mm_to_json(const MMBentSpec& spec) {
  return {{"n", spec.n},
          {"phi", spec.phi},
          {"h", spec.h.to_hex()}};
}

inline MMBentSpec mm_from_json(const nlohmann::json& j) {
  MMBentSpec spec;
  spec.n = j.at("n").get<int>();
  spec.phi = j.at("phi").get<std::vector<uint32_t>>();
  if (spec.n >= 2 && spec.n <= 24 && spec.n % 2 == 0)
    spec.h = TruthTable::from_hex(spec.n / 2,
                                  j.at("h").get<std::string>());
  spec.validate();
  return spec;
}

}  // namespace qsep
