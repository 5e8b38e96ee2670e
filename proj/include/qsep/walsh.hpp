#pragma once

// Walsh spectrum W_f(a) = sum over x of (-1)^(f(x) XOR a.x), computed by the
// standard in-place butterfly on the +-1 encoding of f.  Spectra exist for
// up to 20 variables (4 MiB of int32 per call at the cap).

#include <cstdint>
#include <cstdlib>
#include <vector>

#include "qsep/errors.hpp"
#include "qsep/truth_table.hpp"

namespace qsep {

struct WalshSpectrum {
  int n = 0;
  std::vector<int32_t> w;  // w[a] = W_f(a)

  int32_t operator[](uint32_t a) const { return w[a]; }

  int32_t max_abs() const {
    int32_t m = 0;
    for (int32_t v : w) m = std::max(m, std::abs(v));
    return m;
  }

  // Parseval: sum of W(a)^2 == 2^(2n).
  bool parseval_holds() const {
    uint64_t sum = 0;
    for (int32_t v : w) sum += uint64_t(int64_t(v) * int64_t(v));
    return sum == (uint64_t(1) << (2 * n));
  }
};

inline WalshSpectrum walsh_transform(const TruthTable& f) {
  constexpr int kMax = 20;
  if (f.n() > kMax)
    throw cap_error("walsh transform capped at " + std::to_string(kMax) +
                    " variables");
  WalshSpectrum s;
  s.n = f.n();
  s.w.resize(f.size());
  for (uint32_t x = 0; x < f.size(); ++x) s.w[x] = f.get(x) ? -1 : 1;
  for (uint32_t len = 1; len < f.size(); len <<= 1)
    for (uint32_t base = 0; base < f.size(); base += 2 * len)
      for (uint32_t k = base; k < base + len; ++k) {
        int32_t a = s.w[k], b = s.w[k + len];
        s.w[k] = a + b;
        s.w[k + len] = a - b;
      }
  return s;
}

// Distance to the nearest affine function: 2^(n-1) - max|W|/2.
inline int nonlinearity(const TruthTable& f) {
  WalshSpectrum s = walsh_transform(f);
  return int((int64_t(f.size()) - s.max_abs()) / 2);
}

}  // namespace qsep
