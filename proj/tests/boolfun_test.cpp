#include <qsep/boolfun.hpp>

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

namespace {

using qsep::TruthTable;

TEST(Boolfun, InfluencingVariables) {
  // x1*x2 + x1 + x2 embedded in three variables: x3 never matters.
  auto f = TruthTable::from_function(3, [](uint32_t x) {
    uint32_t a = x & 1, b = (x >> 1) & 1;
    return ((a & b) ^ a ^ b) != 0;
  });
  EXPECT_EQ(qsep::influencing_variables(f), (std::vector<int>{1, 2}));
  EXPECT_EQ(qsep::influencing_count(f), 2);
  EXPECT_TRUE(qsep::depends_on(f, 1));
  EXPECT_FALSE(qsep::depends_on(f, 3));
}

TEST(Boolfun, ConstantHasNoInfluencingVariables) {
  EXPECT_TRUE(qsep::influencing_variables(TruthTable(4)).empty());
}

TEST(Boolfun, DependsOnCrossesWordBoundary) {
  // n = 7: variable 7 toggles between the two 64-bit words.
  TruthTable f(7);
  f.set(100, true);  // bit 6 of the index is set -> lives in word 1
  EXPECT_TRUE(qsep::depends_on(f, 7));
  EXPECT_EQ(qsep::influencing_count(f), 7);
}

TEST(Boolfun, RestrictVarMatchesNaive) {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 100; ++iter) {
    int n = 2 + int(rng() % 5);  // 2..6
    TruthTable f(n);
    for (auto& w : f.words()) w = rng();
    f.mask_tail();
    auto table = oracle::table_of(f);
    for (int v = 1; v <= n; ++v) {
      for (int b = 0; b < 2; ++b) {
        qsep::Subfunction s = qsep::restrict_var(f, v, b != 0);
        auto expect = oracle::detail::table_restrict(table, n, v, b);
        ASSERT_EQ(s.table.n(), n - 1);
        for (uint32_t y = 0; y < s.table.size(); ++y)
          ASSERT_EQ(s.table.get(y) ? 1 : 0, expect[y])
              << "n=" << n << " v=" << v << " b=" << b << " y=" << y;
        // Survivor id map: every variable except v, in order.
        ASSERT_EQ(int(s.vars.size()), n - 1);
        int pos = 0;
        for (int u = 1; u <= n; ++u) {
          if (u != v) {
            ASSERT_EQ(s.vars[pos++], u);
          }
        }
      }
    }
  }
}

TEST(Boolfun, RestrictParityMatchesNaive) {
  std::mt19937_64 rng(13);
  for (int iter = 0; iter < 60; ++iter) {
    int n = 2 + int(rng() % 5);
    TruthTable f(n);
    for (auto& w : f.words()) w = rng();
    f.mask_tail();
    auto table = oracle::table_of(f);
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        for (int b = 0; b < 2; ++b) {
          qsep::Subfunction s = qsep::restrict_parity(f, i, j, b != 0);
          auto expect = oracle::detail::table_restrict_parity(table, n, i, j, b);
          for (uint32_t y = 0; y < s.table.size(); ++y)
            ASSERT_EQ(s.table.get(y) ? 1 : 0, expect[y])
                << "n=" << n << " i=" << i << " j=" << j << " b=" << b;
        }
      }
    }
  }
}

TEST(Boolfun, RestrictParityIsSymmetricInTheQuery) {
  // x_j := x_i xor b and x_i := x_j xor b restrict to the same function
  // (the survivor sets differ, but on XOR queries the subfunction agrees
  // after renaming); check the defining identity directly instead: the
  // restricted function evaluated at the surviving point equals f at the
  // corresponding full point.
  auto f = TruthTable::from_function(3, [](uint32_t x) {
    return ((x & 1) ^ ((x >> 2) & 1)) != 0;  // x1 xor x3
  });
  qsep::Subfunction s = qsep::restrict_parity(f, 1, 3, true);
  // Survivors are {x1, x2}; with x3 = x1 xor 1 the function is constant 1.
  EXPECT_TRUE(s.table.is_constant());
  EXPECT_TRUE(s.table.get(0));
}

TEST(Boolfun, RestrictionValidation) {
  TruthTable f(3);
  EXPECT_THROW(qsep::restrict_var(f, 0, false), std::invalid_argument);
  EXPECT_THROW(qsep::restrict_var(f, 4, false), std::invalid_argument);
  EXPECT_THROW(qsep::restrict_parity(f, 2, 2, false), std::invalid_argument);
  EXPECT_THROW((void)qsep::restrict_var(TruthTable(1), 1, false),
               std::invalid_argument);
}

}  // namespace
