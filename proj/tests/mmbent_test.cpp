#include <qsep/mmbent.hpp>

#include <gtest/gtest.h>

#include <bit>
#include <cstdlib>

#include <qsep/anf.hpp>
#include <qsep/certify.hpp>
#include <qsep/depth.hpp>
#include <qsep/real_poly.hpp>
#include <qsep/walsh.hpp>

namespace {

using qsep::MMBentSpec;
using qsep::TruthTable;

TEST(MmBent, IdentityTwoVariablesIsAnd) {
  TruthTable f = qsep::mm_build(qsep::mm_identity_spec(2));
  EXPECT_EQ(qsep::anf_to_text(qsep::anf_from_tt(f)), "x1*x2");
}

TEST(MmBent, IdentityFourVariables) {
  TruthTable f = qsep::mm_build(qsep::mm_identity_spec(4));
  EXPECT_EQ(qsep::anf_to_text(qsep::anf_from_tt(f)), "x1*x3 + x2*x4");
}

TEST(MmBent, InnerTermFoldsIn) {
  // h(x) = x1 x2 adds the monomial v1 v2.
  TruthTable h = TruthTable::from_function(
      2, [](uint32_t x) { return x == 3; });
  TruthTable f = qsep::mm_build(qsep::mm_identity_spec(4, h));
  EXPECT_EQ(qsep::anf_to_text(qsep::anf_from_tt(f)),
            "x1*x2 + x1*x3 + x2*x4");
}

TEST(MmBent, BentnessOfConstructionsAndNotOfAffine) {
  EXPECT_TRUE(qsep::is_bent(qsep::mm_build(qsep::mm_identity_spec(4))));
  auto xor2 = TruthTable::from_function(
      2, [](uint32_t x) { return ((x ^ (x >> 1)) & 1) != 0; });
  EXPECT_FALSE(qsep::is_bent(xor2));
  EXPECT_THROW(qsep::is_bent(TruthTable(3)), std::invalid_argument);
}

TEST(MmBent, FiftyRandomSpecsAreBent) {
  for (int n : {2, 4, 6}) {
    for (uint64_t seed = 1; seed <= 50; ++seed) {
      MMBentSpec spec = qsep::random_mm(n, seed);
      ASSERT_TRUE(qsep::is_bent(qsep::mm_build(spec)))
          << "n=" << n << " seed=" << seed;
    }
  }
}

TEST(MmBent, WalshSpectrumIsFlat) {
  TruthTable f = qsep::mm_build(qsep::mm_identity_spec(4));
  qsep::WalshSpectrum s = qsep::walsh_transform(f);
  for (uint32_t a = 0; a < f.size(); ++a)
    ASSERT_EQ(std::abs(s[a]), 4);
}

TEST(MmBent, ClassicalTreeComputesTheFunction) {
  for (int n : {2, 4}) {
    MMBentSpec spec = qsep::mm_identity_spec(n);
    TruthTable f = qsep::mm_build(spec);
    qsep::DecisionTree t = qsep::mm_classical_tree(spec);
    EXPECT_EQ(t.depth(), n);
    EXPECT_EQ(qsep::tree_function(t, n), f);
  }
}

TEST(MmBent, ClassicalSubtreeQueriesOnlyTheMaskedVariables) {
  // phi = identity: after x = (1,0) the mask is 01, so the only queried
  // y-variable is y1 = v3, making that subtree depth 1.
  MMBentSpec spec = qsep::mm_identity_spec(4);
  qsep::DecisionTree t = qsep::mm_classical_tree(spec);
  // Walk x1=1 then x2=0.
  const auto* node = t.root.get();
  ASSERT_EQ(node->var, 1);
  node = node->child1.get();
  ASSERT_EQ(node->var, 2);
  node = node->child0.get();
  EXPECT_EQ(node->var, 3);  // v3 = y1
  EXPECT_EQ(node->child0->var, 0);  // leaf: no second y query
  EXPECT_EQ(node->child1->var, 0);
}

TEST(MmBent, ParityTreeDepthBound) {
  EXPECT_EQ(qsep::mm_parity_tree(qsep::mm_identity_spec(2)).depth(), 2);
  EXPECT_EQ(qsep::mm_parity_tree(qsep::mm_identity_spec(4)).depth(), 3);
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    MMBentSpec spec = qsep::random_mm(6, seed);
    qsep::ParityDecisionTree t = qsep::mm_parity_tree(spec);
    EXPECT_LE(t.depth(), 5);  // ceil(3*6/4)
    EXPECT_EQ(qsep::ptree_function(t, 6), qsep::mm_build(spec));
  }
}

TEST(MmBent, TreesAgreeOnRandomSpecs) {
  for (int n : {2, 4, 6}) {
    for (uint64_t seed = 1; seed <= 5; ++seed) {
      MMBentSpec spec = qsep::random_mm(n, seed);
      TruthTable f = qsep::mm_build(spec);
      EXPECT_EQ(qsep::tree_function(qsep::mm_classical_tree(spec), n), f);
      EXPECT_EQ(qsep::ptree_function(qsep::mm_parity_tree(spec), n), f);
    }
  }
}

TEST(MmBent, RestrictionIdentities) {
  for (int n : {2, 4, 6}) {
    for (uint64_t seed = 1; seed <= 3; ++seed) {
      MMBentSpec spec = qsep::random_mm(n, seed);
      TruthTable f = qsep::mm_build(spec);
      int half = n / 2;
      uint32_t all_ones = (1u << half) - 1;

      // x fixed at the preimage of the all-ones mask: f becomes the full
      // XOR of the y block, possibly complemented by h at that point.
      uint32_t xhat = 0;
      for (uint32_t v = 0; v <= all_ones; ++v)
        if (spec.phi[v] == all_ones) xhat = v;
      TruthTable g = f;
      std::vector<int> survivors;
      {
        // Fix x-variables (1..half) to the bits of xhat, highest id first.
        qsep::TruthTable cur = f;
        for (int v = half; v >= 1; --v) {
          auto sub = qsep::restrict_var(cur, v, ((xhat >> (v - 1)) & 1) != 0);
          cur = sub.table;
        }
        g = cur;
      }
      bool hx = spec.h.get(xhat);
      for (uint32_t y = 0; y < (1u << half); ++y) {
        int parity = std::popcount(y) & 1;
        ASSERT_EQ(g.get(y) ? 1 : 0, parity ^ (hx ? 1 : 0))
            << "n=" << n << " seed=" << seed << " y=" << y;
      }

      // y fixed to all zeros: f collapses to h.
      qsep::TruthTable cur = f;
      for (int v = n; v >= half + 1; --v) {
        auto sub = qsep::restrict_var(cur, v, false);
        cur = sub.table;
      }
      ASSERT_EQ(cur, spec.h);
    }
  }
}

TEST(MmBent, SingleVariableFlipsMatter) {
  MMBentSpec spec = qsep::random_mm(4, 9);
  TruthTable f = qsep::mm_build(spec);
  for (int i = 1; i <= 2; ++i) {
    bool differs = false;
    for (uint32_t x = 0; x < f.size() && !differs; ++x)
      differs = f.get(x) != f.get(x ^ (1u << (i - 1)));
    EXPECT_TRUE(differs);
  }
}

TEST(MmBent, RealDegreeIsFullWidth) {
  for (int n : {2, 4, 6}) {
    MMBentSpec spec = qsep::random_mm(n, 5);
    EXPECT_EQ(qsep::real_degree(qsep::mm_build(spec)), n);
  }
}

TEST(MmBent, DepthIsFullWidthAtFour) {
  MMBentSpec spec = qsep::random_mm(4, 2);
  EXPECT_EQ(qsep::optimal_depth(qsep::mm_build(spec)), 4);
}

TEST(MmBent, RandomSpecsAreDeterministic) {
  MMBentSpec a = qsep::random_mm(4, 77);
  MMBentSpec b = qsep::random_mm(4, 77);
  EXPECT_EQ(a.phi, b.phi);
  EXPECT_EQ(a.h, b.h);
  MMBentSpec c = qsep::random_mm(4, 78);
  EXPECT_TRUE(c.phi != a.phi || !(c.h == a.h));
}

TEST(MmBent, SpecValidation) {
  EXPECT_THROW(qsep::mm_identity_spec(3), std::invalid_argument);
  EXPECT_THROW(qsep::random_mm(14, 1), std::invalid_argument);

  MMBentSpec bad = qsep::mm_identity_spec(4);
  bad.phi[0] = bad.phi[1];  // not a bijection
  EXPECT_THROW(qsep::mm_build(bad), std::invalid_argument);
}

TEST(MmBent, JsonRoundTrip) {
  MMBentSpec spec = qsep::random_mm(6, 3);
  nlohmann::json j = qsep::mm_to_json(spec);
  EXPECT_EQ(j["n"], 6);
  EXPECT_EQ(j["phi"].size(), 8u);
  MMBentSpec back = qsep::mm_from_json(j);
  EXPECT_EQ(back.phi, spec.phi);
  EXPECT_EQ(back.h, spec.h);
  EXPECT_EQ(qsep::mm_build(back), qsep::mm_build(spec));
}

}  // namespace
