#pragma once

// The unique multilinear polynomial over the reals agreeing with f on
// {0,1}^n, via Moebius inversion: the coefficient of the monomial with
// support S is sum over T subset of S of (-1)^(|S|-|T|) f(T).  Coefficients
// are integers bounded by 2^n, kept exactly in int64.  Capped at 16
// variables (the dense coefficient vector).

#include <cstdint>
#include <vector>

#include "qsep/errors.hpp"
#include "qsep/truth_table.hpp"

namespace qsep {

struct RealPoly {
  int n = 0;
  std::vector<int64_t> c;  // c[mask] = coefficient of prod_{i in mask} x_i

  int64_t coeff(uint32_t mask) const { return c[mask]; }

  int degree() const {
    int d = 0;
    for (uint32_t m = 0; m < c.size(); ++m)
      if (c[m] != 0) d = std::max(d, std::popcount(m));
    return d;
  }

  // Evaluate at a 0/1 point: only monomials inside the point contribute.
  int64_t eval(uint32_t x) const {
    int64_t v = c[0];
    for (uint32_t s = x; s != 0; s = (s - 1) & x) v += c[s];
    return v;
  }
};

inline RealPoly real_multilinear(const TruthTable& f) {
  constexpr int kMax = 16;
  if (f.n() > kMax)
    throw cap_error("real multilinear extension capped at " +
                    std::to_string(kMax) + " variables");
  RealPoly p;
  p.n = f.n();
  p.c.resize(f.size());
  for (uint32_t x = 0; x < f.size(); ++x) p.c[x] = f.get(x) ? 1 : 0;
  for (int v = 0; v < f.n(); ++v) {
    uint32_t bit = 1u << v;
    for (uint32_t x = 0; x < f.size(); ++x)
      if (x & bit) p.c[x] -= p.c[x ^ bit];
  }
  return p;
}

inline int real_degree(const TruthTable& f) {
  return real_multilinear(f).degree();
}

}  // namespace qsep
