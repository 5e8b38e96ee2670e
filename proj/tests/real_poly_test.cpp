#include <qsep/real_poly.hpp>

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

namespace {

using qsep::TruthTable;

TEST(RealPoly, AndIsAlreadyMultilinear) {
  auto f = TruthTable::from_function(
      2, [](uint32_t x) { return (x & 1) && (x & 2); });
  qsep::RealPoly p = qsep::real_multilinear(f);
  EXPECT_EQ(p.coeff(0b00), 0);
  EXPECT_EQ(p.coeff(0b01), 0);
  EXPECT_EQ(p.coeff(0b10), 0);
  EXPECT_EQ(p.coeff(0b11), 1);
  EXPECT_EQ(p.degree(), 2);
}

TEST(RealPoly, XorExpandsWithCrossTerm) {
  // x1 xor x2 = x1 + x2 - 2 x1 x2 over the reals.
  auto f = TruthTable::from_function(
      2, [](uint32_t x) { return ((x ^ (x >> 1)) & 1) != 0; });
  qsep::RealPoly p = qsep::real_multilinear(f);
  EXPECT_EQ(p.coeff(0b01), 1);
  EXPECT_EQ(p.coeff(0b10), 1);
  EXPECT_EQ(p.coeff(0b11), -2);
  EXPECT_EQ(p.coeff(0b00), 0);
}

TEST(RealPoly, BentSumHasFullDegree) {
  // x1x2 xor x3x4 has real degree 4.
  auto f = TruthTable::from_function(4, [](uint32_t x) {
    uint32_t a = x & 1, b = (x >> 1) & 1, c = (x >> 2) & 1, d = (x >> 3) & 1;
    return ((a & b) ^ (c & d)) != 0;
  });
  EXPECT_EQ(qsep::real_degree(f), 4);
}

TEST(RealPoly, CoefficientsMatchInclusionExclusion) {
  std::mt19937_64 rng(29);
  for (int iter = 0; iter < 80; ++iter) {
    int n = 1 + int(rng() % 5);
    TruthTable f(n);
    for (auto& w : f.words()) w = rng();
    f.mask_tail();
    qsep::RealPoly p = qsep::real_multilinear(f);
    for (uint32_t m = 0; m < f.size(); ++m)
      ASSERT_EQ(p.coeff(m), oracle::real_coefficient(f, m))
          << "n=" << n << " mask=" << m;
  }
}

TEST(RealPoly, EvaluatesExactlyOnHypercubeExhaustively) {
  for (int n = 1; n <= 4; ++n) {
    for (uint64_t bits = 0; bits < (1ull << (1u << n)); ++bits) {
      TruthTable f(n);
      f.words()[0] = bits;
      qsep::RealPoly p = qsep::real_multilinear(f);
      for (uint32_t x = 0; x < f.size(); ++x)
        ASSERT_EQ(p.eval(x), int64_t(f.get(x) ? 1 : 0))
            << "n=" << n << " bits=" << bits << " x=" << x;
    }
  }
}

TEST(RealPoly, ParityOfRealPolynomialMatchesAnfEvaluation) {
  // Reduced mod 2 on 0/1 points, the real polynomial is the function, which
  // in turn equals its ANF evaluation.
  std::mt19937_64 rng(31);
  for (int iter = 0; iter < 50; ++iter) {
    int n = 1 + int(rng() % 6);
    TruthTable f(n);
    for (auto& w : f.words()) w = rng();
    f.mask_tail();
    qsep::RealPoly p = qsep::real_multilinear(f);
    for (uint32_t x = 0; x < f.size(); ++x) {
      int parity = int(((p.eval(x) % 2) + 2) % 2);
      ASSERT_EQ(parity, f.get(x) ? 1 : 0);
    }
  }
}

TEST(RealPoly, ConstantsHaveDegreeZero) {
  EXPECT_EQ(qsep::real_degree(TruthTable(3)), 0);
  TruthTable one(3);
  one.words()[0] = 0xff;
  EXPECT_EQ(qsep::real_degree(one), 0);
  EXPECT_EQ(qsep::real_multilinear(one).coeff(0), 1);
}

TEST(RealPoly, CapEnforced) {
  EXPECT_THROW(qsep::real_multilinear(TruthTable(17)), qsep::cap_error);
}

}  // namespace
