#include <qsep/decision_tree.hpp>

#include <gtest/gtest.h>

#include <qsep/anf.hpp>

namespace {

using qsep::DecisionTree;
using qsep::TruthTable;

// Root queries x1; the 0-branch queries x2 (leaves 0/1), the 1-branch
// queries x3 with swapped leaves, i.e. (x1 xor 1)x2 xor x1(x3 xor 1).
DecisionTree branch_swap_tree() {
  DecisionTree t;
  t.root = DecisionTree::node(
      1,
      DecisionTree::node(2, DecisionTree::leaf(0), DecisionTree::leaf(1)),
      DecisionTree::node(3, DecisionTree::leaf(1), DecisionTree::leaf(0)));
  return t;
}

// f = x1 ? x3 : x2 with plain leaves; table 0xe4.
DecisionTree select_tree() {
  DecisionTree t;
  t.root = DecisionTree::node(
      1,
      DecisionTree::node(2, DecisionTree::leaf(0), DecisionTree::leaf(1)),
      DecisionTree::node(3, DecisionTree::leaf(0), DecisionTree::leaf(1)));
  return t;
}

TEST(DecisionTree, EvalFollowsBranches) {
  DecisionTree t = branch_swap_tree();
  // x1=0 -> query x2=1 -> leaf 1.
  EXPECT_EQ(qsep::eval_tree(t, 0b010), 1);
  EXPECT_EQ(qsep::eval_tree(t, 0b110), 1);  // x3 unread on this path
  // x1=1 -> query x3.
  EXPECT_EQ(qsep::eval_tree(t, 0b001), 1);
  EXPECT_EQ(qsep::eval_tree(t, 0b101), 0);
}

TEST(DecisionTree, SelectTreeAtFixedPoints) {
  DecisionTree t = select_tree();
  // x1=1, x3=0 -> 0 regardless of x2.
  EXPECT_EQ(qsep::eval_tree(t, 0b001), 0);
  EXPECT_EQ(qsep::eval_tree(t, 0b011), 0);
}

TEST(DecisionTree, SingleLeafTree) {
  DecisionTree t;
  t.root = DecisionTree::leaf(0);
  EXPECT_EQ(qsep::eval_tree(t, 0), 0);
  EXPECT_EQ(t.depth(), 0);
  TruthTable f = qsep::tree_function(t, 2);
  EXPECT_TRUE(f.is_constant());

  t.root = DecisionTree::leaf(1);
  EXPECT_EQ(qsep::tree_function(t, 1).count_ones(), 2u);
}

TEST(DecisionTree, TreeFunctionMatchesEval) {
  DecisionTree t = branch_swap_tree();
  TruthTable f = qsep::tree_function(t, 3);
  for (uint32_t x = 0; x < 8; ++x)
    ASSERT_EQ(f.get(x) ? 1 : 0, qsep::eval_tree(t, x));
  // (1 xor x1)x2 xor x1(1 xor x3) = x1x2 + x1x3 + x1 + x2.
  EXPECT_EQ(qsep::anf_to_text(qsep::anf_from_tt(f)),
            "x1*x2 + x1*x3 + x1 + x2");
}

TEST(DecisionTree, SelectTreeComputesKnownTable) {
  EXPECT_EQ(qsep::tree_function(select_tree(), 3),
            TruthTable::from_hex(3, "e4"));
}

TEST(DecisionTree, DepthAndMaxVar) {
  DecisionTree t = branch_swap_tree();
  EXPECT_EQ(t.depth(), 2);
  EXPECT_EQ(t.max_var(), 3);
  EXPECT_TRUE(t.well_formed());
}

TEST(DecisionTree, JsonRoundTrip) {
  DecisionTree t = branch_swap_tree();
  nlohmann::json j = qsep::tree_to_json(t);
  EXPECT_EQ(j["q"]["kind"], "var");
  EXPECT_EQ(j["q"]["i"], 1);
  DecisionTree back = qsep::tree_from_json(j);
  EXPECT_EQ(qsep::tree_function(back, 3), qsep::tree_function(t, 3));
  EXPECT_EQ(qsep::tree_to_json(back), j);
}

TEST(DecisionTree, JsonLeaf) {
  nlohmann::json j = {{"leaf", 1}};
  DecisionTree t = qsep::tree_from_json(j);
  EXPECT_EQ(qsep::eval_tree(t, 0), 1);
}

TEST(DecisionTree, JsonRejectsParityNodes) {
  nlohmann::json j = {{"q", {{"kind", "parity"}, {"i", 1}, {"j", 2}}},
                      {"0", {{"leaf", 0}}},
                      {"1", {{"leaf", 1}}}};
  EXPECT_THROW(qsep::tree_from_json(j), qsep::parse_error);
}

TEST(DecisionTree, JsonRejectsMalformedNodes) {
  EXPECT_THROW(qsep::tree_from_json(nlohmann::json::object()),
               qsep::parse_error);
  nlohmann::json missing_child = {{"q", {{"kind", "var"}, {"i", 1}}},
                                  {"0", {{"leaf", 0}}}};
  EXPECT_THROW(qsep::tree_from_json(missing_child), qsep::parse_error);
}

TEST(DecisionTree, EvalRejectsOutOfRangeIndex) {
  DecisionTree t = branch_swap_tree();
  EXPECT_THROW(qsep::tree_function(t, 2), std::invalid_argument);
}

}  // namespace
