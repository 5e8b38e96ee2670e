#include <qsep/pnp.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include <qsep/depth.hpp>

namespace {

using qsep::PnpWitness;
using qsep::TruthTable;

TruthTable and2() {
  return TruthTable::from_function(
      2, [](uint32_t x) { return (x & 1) && (x & 2); });
}

TEST(Pnp, IdentityWitness) {
  TruthTable f = and2();
  auto w = qsep::pnp_equivalent(f, f);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(qsep::apply_pnp(f, *w), f);
}

TEST(Pnp, DetectsPermutation) {
  // x1 & x3 vs x2 & x3 on three variables.
  auto f = TruthTable::from_function(
      3, [](uint32_t x) { return (x & 1) && (x & 4); });
  auto g = TruthTable::from_function(
      3, [](uint32_t x) { return (x & 2) && (x & 4); });
  auto w = qsep::pnp_equivalent(f, g);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(qsep::apply_pnp(f, *w), g);
}

TEST(Pnp, DetectsNegationAndComplement) {
  TruthTable f = and2();
  // NOR = complement of OR = AND with both inputs negated.
  auto nor2 = TruthTable::from_function(
      2, [](uint32_t x) { return !((x & 1) || (x & 2)); });
  auto w = qsep::pnp_equivalent(f, nor2);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(qsep::apply_pnp(f, *w), nor2);

  // NAND needs the output complement.
  auto nand2 = TruthTable::from_function(
      2, [](uint32_t x) { return !((x & 1) && (x & 2)); });
  auto w2 = qsep::pnp_equivalent(f, nand2);
  ASSERT_TRUE(w2.has_value());
  EXPECT_TRUE(w2->complement);
}

TEST(Pnp, DistinguishesAndFromXor) {
  auto x1x2 = TruthTable::from_function(
      2, [](uint32_t x) { return ((x ^ (x >> 1)) & 1) != 0; });
  EXPECT_FALSE(qsep::pnp_equivalent(and2(), x1x2).has_value());
}

TEST(Pnp, RandomOrbitMembersAreEquivalent) {
  std::mt19937_64 rng(37);
  for (int iter = 0; iter < 20; ++iter) {
    int n = 2 + int(rng() % 3);
    TruthTable f(n);
    for (auto& w : f.words()) w = rng();
    f.mask_tail();

    PnpWitness w;
    w.perm.resize(n);
    for (int i = 0; i < n; ++i) w.perm[i] = i + 1;
    std::shuffle(w.perm.begin(), w.perm.end(), rng);
    w.neg_mask = uint32_t(rng()) & ((1u << n) - 1);
    w.complement = (rng() & 1) != 0;

    TruthTable g = qsep::apply_pnp(f, w);
    auto found = qsep::pnp_equivalent(f, g);
    ASSERT_TRUE(found.has_value());
    EXPECT_EQ(qsep::apply_pnp(f, *found), g);
  }
}

TEST(Pnp, PreservesOptimalDepth) {
  std::mt19937_64 rng(41);
  for (int iter = 0; iter < 10; ++iter) {
    int n = 3;
    TruthTable f(n);
    f.words()[0] = rng();
    f.mask_tail();
    PnpWitness w;
    w.perm = {2, 3, 1};
    w.neg_mask = uint32_t(rng()) & 7u;
    w.complement = (rng() & 1) != 0;
    TruthTable g = qsep::apply_pnp(f, w);
    EXPECT_EQ(qsep::optimal_depth(f), qsep::optimal_depth(g));
    EXPECT_EQ(qsep::optimal_parity_depth(f), qsep::optimal_parity_depth(g));
  }
}

TEST(Pnp, DifferentWidthsNeverEquivalent) {
  EXPECT_FALSE(qsep::pnp_equivalent(and2(), TruthTable(3)).has_value());
}

TEST(Pnp, CapEnforced) {
  EXPECT_THROW(qsep::pnp_equivalent(TruthTable(7), TruthTable(7)),
               qsep::cap_error);
}

}  // namespace
