// Naive reference implementations used as independent oracles in tests.
// Everything here favours obviousness over speed: direct definitional
// formulas, no bit tricks, no memoization.  Library results are checked
// against these on small inputs.

#pragma once

#include <qsep/anf.hpp>
#include <qsep/truth_table.hpp>

#include <cstdint>
#include <limits>
#include <map>
#include <vector>

namespace oracle {

// Walsh coefficient by the definitional double loop:
//   W(a) = sum_x (-1)^(f(x) (+) <a,x>).
inline long long walsh_coefficient(const qsep::TruthTable& f, uint32_t a) {
  long long sum = 0;
  for (uint32_t x = 0; x < f.size(); ++x) {
    int fx = f.get(x) ? 1 : 0;
    int dot = 0;
    for (int b = 0; b < f.n(); ++b) {
      dot ^= static_cast<int>((a >> b) & 1u) & static_cast<int>((x >> b) & 1u);
    }
    sum += ((fx ^ dot) != 0) ? -1 : 1;
  }
  return sum;
}

// Nonlinearity as the minimum Hamming distance to all 2*2^n affine
// functions, enumerated one by one.
inline int nonlinearity_by_enumeration(const qsep::TruthTable& f) {
  int best = std::numeric_limits<int>::max();
  for (uint32_t a = 0; a < f.size(); ++a) {
    for (int c = 0; c < 2; ++c) {
      int dist = 0;
      for (uint32_t x = 0; x < f.size(); ++x) {
        int dot = 0;
        for (int b = 0; b < f.n(); ++b) {
          dot ^= static_cast<int>((a >> b) & 1u) & static_cast<int>((x >> b) & 1u);
        }
        int affine = dot ^ c;
        if (affine != (f.get(x) ? 1 : 0)) ++dist;
      }
      best = std::min(best, dist);
    }
  }
  return best;
}

// ANF coefficient of monomial `mask` by subset-sum Moebius inversion:
//   c(mask) = XOR over all x <= mask (submask order) of f(x).
inline bool anf_coefficient(const qsep::TruthTable& f, uint32_t mask) {
  int acc = 0;
  for (uint32_t x = 0; x < f.size(); ++x) {
    if ((x & mask) == x) acc ^= f.get(x) ? 1 : 0;
  }
  return acc != 0;
}

inline int algebraic_degree_naive(const qsep::TruthTable& f) {
  int deg = 0;
  bool nonzero = false;
  for (uint32_t mask = 0; mask < f.size(); ++mask) {
    if (anf_coefficient(f, mask)) {
      nonzero = true;
      deg = std::max(deg, static_cast<int>(__builtin_popcount(mask)));
    }
  }
  return nonzero ? deg : 0;
}

// Real multilinear coefficient by inclusion-exclusion:
//   c(S) = sum_{x <= S} (-1)^(|S| - |x|) f(x).
inline long long real_coefficient(const qsep::TruthTable& f, uint32_t mask) {
  long long sum = 0;
  int msize = __builtin_popcount(mask);
  for (uint32_t x = 0; x < f.size(); ++x) {
    if ((x & mask) != x) continue;
    int xsize = __builtin_popcount(x);
    long long sign = ((msize - xsize) % 2 == 0) ? 1 : -1;
    sum += sign * (f.get(x) ? 1 : 0);
  }
  return sum;
}

// Evaluate a real multilinear coefficient vector at a 0/1 point.
inline long long real_eval(const std::vector<long long>& coeff, int n, uint32_t x) {
  long long sum = 0;
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    if ((mask & x) == mask) sum += coeff[mask];
  }
  return sum;
}

namespace detail {

inline bool table_depends(const std::vector<int>& table, int n, int var) {
  uint32_t bit = 1u << (var - 1);
  for (uint32_t x = 0; x < (1u << n); ++x) {
    if ((x & bit) == 0 && table[x] != table[x | bit]) return true;
  }
  return false;
}

inline std::vector<int> table_restrict(const std::vector<int>& table, int n, int var, int value) {
  std::vector<int> out(1u << (n - 1));
  for (uint32_t y = 0; y < out.size(); ++y) {
    uint32_t low = y & ((1u << (var - 1)) - 1);
    uint32_t high = y >> (var - 1);
    uint32_t x = low | (static_cast<uint32_t>(value) << (var - 1)) | (high << var);
    out[y] = table[x];
  }
  return out;
}

inline std::vector<int> table_restrict_parity(const std::vector<int>& table, int n, int i, int j,
                                              int b) {
  // x_j := x_i (+) b, removing variable j (i < j).
  std::vector<int> out(1u << (n - 1));
  for (uint32_t y = 0; y < out.size(); ++y) {
    uint32_t low = y & ((1u << (j - 1)) - 1);
    uint32_t high = y >> (j - 1);
    uint32_t xi = (y >> (i - 1)) & 1u;
    uint32_t xj = xi ^ static_cast<uint32_t>(b);
    uint32_t x = low | (xj << (j - 1)) | (high << j);
    out[y] = table[x];
  }
  return out;
}

inline bool table_constant(const std::vector<int>& table) {
  for (int v : table) {
    if (v != table[0]) return false;
  }
  return true;
}

}  // namespace detail

// Minimum deterministic decision-tree depth by plain minimax recursion.
// No memoization, no pruning beyond constancy; only usable for n <= 4.
inline int det_depth_naive(const std::vector<int>& table, int n) {
  if (detail::table_constant(table)) return 0;
  int best = n;
  for (int var = 1; var <= n; ++var) {
    if (!detail::table_depends(table, n, var)) continue;
    auto f0 = detail::table_restrict(table, n, var, 0);
    auto f1 = detail::table_restrict(table, n, var, 1);
    int d = 1 + std::max(det_depth_naive(f0, n - 1), det_depth_naive(f1, n - 1));
    best = std::min(best, d);
  }
  return best;
}

// Minimum parity decision-tree depth: queries are single variables or
// XOR of two variables; both restricted halves recurse.
inline int parity_depth_naive(const std::vector<int>& table, int n) {
  if (detail::table_constant(table)) return 0;
  int best = n;
  for (int var = 1; var <= n; ++var) {
    auto f0 = detail::table_restrict(table, n, var, 0);
    auto f1 = detail::table_restrict(table, n, var, 1);
    int d = 1 + std::max(parity_depth_naive(f0, n - 1), parity_depth_naive(f1, n - 1));
    best = std::min(best, d);
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      auto f0 = detail::table_restrict_parity(table, n, i, j, 0);
      auto f1 = detail::table_restrict_parity(table, n, i, j, 1);
      int d = 1 + std::max(parity_depth_naive(f0, n - 1), parity_depth_naive(f1, n - 1));
      best = std::min(best, d);
    }
  }
  return best;
}

inline std::vector<int> table_of(const qsep::TruthTable& f) {
  std::vector<int> out(f.size());
  for (uint32_t x = 0; x < f.size(); ++x) out[x] = f.get(x) ? 1 : 0;
  return out;
}

}  // namespace oracle
