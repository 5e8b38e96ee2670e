#pragma once

// Deterministic decision trees: internal nodes query one variable, branch 0
// is taken when the queried bit is 0.  Nodes are immutable and shared, so
// subtrees may be reused freely (conversions below produce DAGs; all
// consumers treat them as trees).
//
// JSON schema, shared with parity trees:
//   internal: {"q": {"kind": "var", "i": <int>}, "0": <node>, "1": <node>}
//   leaf:     {"leaf": 0 | 1}

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include "json.hpp"
#include "qsep/errors.hpp"
#include "qsep/truth_table.hpp"

namespace qsep {

struct DecisionTree {
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  struct Node {
    int var = 0;    // 1-based queried variable; 0 marks a leaf
    int value = 0;  // leaf value when var == 0
    NodePtr child0, child1;
  };

  NodePtr root;

  static NodePtr leaf(int v) {
    auto n = std::make_shared<Node>();
    n->value = v;
    return n;
  }
  static NodePtr node(int var, NodePtr c0, NodePtr c1) {
    auto n = std::make_shared<Node>();
    n->var = var;
    n->child0 = std::move(c0);
    n->child1 = std::move(c1);
    return n;
  }

  bool well_formed() const { return check(root.get()); }

  int depth() const { return depth_of(root.get()); }

  // Largest variable index queried anywhere; 0 for a bare leaf.
  int max_var() const { return max_var_of(root.get()); }

 private:
  static bool check(const Node* n) {
    if (!n) return false;
    if (n->var == 0) return n->value == 0 || n->value == 1;
    return n->var >= 1 && check(n->child0.get()) && check(n->child1.get());
  }
  static int depth_of(const Node* n) {
    if (!n || n->var == 0) return 0;
    return 1 + std::max(depth_of(n->child0.get()), depth_of(n->child1.get()));
  }
  static int max_var_of(const Node* n) {
    if (!n || n->var == 0) return 0;
    return std::max(n->var, std::max(max_var_of(n->child0.get()),
                                     max_var_of(n->child1.get())));
  }
};

inline int eval_tree(const DecisionTree& t, uint32_t x) {
  const DecisionTree::Node* n = t.root.get();
  while (n->var != 0) n = ((x >> (n->var - 1)) & 1u) ? n->child1.get()
                                                     : n->child0.get();
  return n->value;
}

// The function computed by t over n variables (n must cover every query).
inline TruthTable tree_function(const DecisionTree& t, int n) {
  if (n < t.max_var())
    throw std::invalid_argument("tree queries a variable beyond n");
  return TruthTable::from_function(n,
                                   [&](uint32_t x) { return eval_tree(t, x) != 0; });
}

inline nlohmann::json tree_to_json(const DecisionTree& t) {
  std::function<nlohmann::json(const DecisionTree::Node*)> rec =
      [&](const DecisionTree::Node* n) -> nlohmann::json {
    if (n->var == 0) return nlohmann::json{{"leaf", n->value}};
    return nlohmann::json{{"q", {{"kind", "var"}, {"i", n->var}}},
                          {"0", rec(n->child0.get())},
                          {"1", rec(n->child1.get())}};
  };
  return rec(t.root.get());
}

inline DecisionTree tree_from_json(const nlohmann::json& j) {
  std::function<DecisionTree::NodePtr(const nlohmann::json&)> rec =
      [&](const nlohmann::json& node) -> DecisionTree::NodePtr {
    if (node.contains("leaf")) {
      int v = node.at("leaf").get<int>();
      if (v != 0 && v != 1) throw parse_error("tree leaf must be 0 or 1");
      return DecisionTree::leaf(v);
    }
    if (!node.contains("q") || !node.contains("0") || !node.contains("1"))
      throw parse_error("tree node needs \"q\", \"0\" and \"1\"");
    const auto& q = node.at("q");
    if (q.at("kind").get<std::string>() != "var")
      throw parse_error("deterministic tree allows only \"var\" queries");
    int i = q.at("i").get<int>();
    if (i < 1) throw parse_error("query index must be positive");
    return DecisionTree::node(i, rec(node.at("0")), rec(node.at("1")));
  };
  DecisionTree t;
  t.root = rec(j);
  if (!t.well_formed()) throw parse_error("malformed tree");
  return t;
}

}  // namespace qsep
