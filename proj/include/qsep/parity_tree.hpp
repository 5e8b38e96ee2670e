#pragma once

// Parity decision trees: an internal node queries either one variable or
// the XOR of two distinct variables.  Depth-d parity trees refine depth-d
// deterministic trees (every single-variable query is a parity query with
// j omitted), and each pair node can be expanded into two deterministic
// queries, which parity_to_deterministic does.
//
// JSON: like deterministic trees, but a query may also be
//   {"kind": "parity", "i": <int>, "j": <int>}.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include "json.hpp"
#include "qsep/decision_tree.hpp"
#include "qsep/errors.hpp"
#include "qsep/truth_table.hpp"

namespace qsep {

struct ParityQuery {
  int i = 0;
  int j = 0;  // 0 => single-variable query on i
  bool is_pair() const { return j != 0; }
};

struct ParityDecisionTree {
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  struct Node {
    bool is_leaf = true;
    int value = 0;  // leaf value
    ParityQuery q;
    NodePtr child0, child1;
  };

  NodePtr root;

  static NodePtr leaf(int v) {
    auto n = std::make_shared<Node>();
    n->value = v;
    return n;
  }
  static NodePtr node(ParityQuery q, NodePtr c0, NodePtr c1) {
    auto n = std::make_shared<Node>();
    n->is_leaf = false;
    n->q = q;
    n->child0 = std::move(c0);
    n->child1 = std::move(c1);
    return n;
  }
  static NodePtr single(int i, NodePtr c0, NodePtr c1) {
    return node(ParityQuery{i, 0}, std::move(c0), std::move(c1));
  }
  static NodePtr pair(int i, int j, NodePtr c0, NodePtr c1) {
    return node(ParityQuery{i, j}, std::move(c0), std::move(c1));
  }

  bool well_formed() const { return check(root.get()); }
  int depth() const { return depth_of(root.get()); }
  int max_var() const { return max_var_of(root.get()); }

  // Depth after pair-node expansion: every pair query costs two
  // deterministic queries on the path.
  int expanded_depth() const { return expanded_of(root.get()); }

 private:
  static bool check(const Node* n) {
    if (!n) return false;
    if (n->is_leaf) return n->value == 0 || n->value == 1;
    if (n->q.i < 1 || (n->q.j != 0 && (n->q.j < 1 || n->q.j == n->q.i)))
      return false;
    return check(n->child0.get()) && check(n->child1.get());
  }
  static int depth_of(const Node* n) {
    if (!n || n->is_leaf) return 0;
    return 1 + std::max(depth_of(n->child0.get()), depth_of(n->child1.get()));
  }
  static int expanded_of(const Node* n) {
    if (!n || n->is_leaf) return 0;
    return (n->q.is_pair() ? 2 : 1) +
           std::max(expanded_of(n->child0.get()), expanded_of(n->child1.get()));
  }
  static int max_var_of(const Node* n) {
    if (!n || n->is_leaf) return 0;
    return std::max({n->q.i, n->q.j, max_var_of(n->child0.get()),
                     max_var_of(n->child1.get())});
  }
};

inline int eval_ptree(const ParityDecisionTree& t, uint32_t x) {
  const ParityDecisionTree::Node* n = t.root.get();
  while (!n->is_leaf) {
    uint32_t bit = (x >> (n->q.i - 1)) & 1u;
    if (n->q.is_pair()) bit ^= (x >> (n->q.j - 1)) & 1u;
    n = bit ? n->child1.get() : n->child0.get();
  }
  return n->value;
}

inline TruthTable ptree_function(const ParityDecisionTree& t, int n) {
  if (n < t.max_var())
    throw std::invalid_argument("tree queries a variable beyond n");
  return TruthTable::from_function(
      n, [&](uint32_t x) { return eval_ptree(t, x) != 0; });
}

// Wrap a deterministic tree as a parity tree (all queries single).
inline ParityDecisionTree as_parity_tree(const DecisionTree& t) {
  std::function<ParityDecisionTree::NodePtr(const DecisionTree::Node*)> rec =
      [&](const DecisionTree::Node* n) -> ParityDecisionTree::NodePtr {
    if (n->var == 0) return ParityDecisionTree::leaf(n->value);
    return ParityDecisionTree::single(n->var, rec(n->child0.get()),
                                      rec(n->child1.get()));
  };
  ParityDecisionTree p;
  p.root = rec(t.root.get());
  return p;
}

// Expand every pair node {i, j} into a deterministic gadget: query x_i,
// then x_j on both branches, with the two outcome subtrees swapped on the
// x_i = 1 side so the landing leaf depends only on the XOR.  The 0-branch
// of the pair node is reached exactly when x_i == x_j.
inline DecisionTree parity_to_deterministic(const ParityDecisionTree& t) {
  std::function<DecisionTree::NodePtr(const ParityDecisionTree::Node*)> rec =
      [&](const ParityDecisionTree::Node* n) -> DecisionTree::NodePtr {
    if (n->is_leaf) return DecisionTree::leaf(n->value);
    auto c0 = rec(n->child0.get());
    auto c1 = rec(n->child1.get());
    if (!n->q.is_pair()) return DecisionTree::node(n->q.i, c0, c1);
    return DecisionTree::node(
        n->q.i, DecisionTree::node(n->q.j, c0, c1),
        DecisionTree::node(n->q.j, c1, c0));
  };
  DecisionTree d;
  d.root = rec(t.root.get());
  return d;
}

inline nlohmann::json ptree_to_json(const ParityDecisionTree& t) {
  std::function<nlohmann::json(const ParityDecisionTree::Node*)> rec =
      [&](const ParityDecisionTree::Node* n) -> nlohmann::json {
    if (n->is_leaf) return nlohmann::json{{"leaf", n->value}};
    nlohmann::json q;
    if (n->q.is_pair())
      q = {{"kind", "parity"}, {"i", n->q.i}, {"j", n->q.j}};
    else
      q = {{"kind", "var"}, {"i", n->q.i}};
    return nlohmann::json{
        {"q", q}, {"0", rec(n->child0.get())}, {"1", rec(n->child1.get())}};
  };
  return rec(t.root.get());
}

inline ParityDecisionTree ptree_from_json(const nlohmann::json& j) {
  std::function<ParityDecisionTree::NodePtr(const nlohmann::json&)> rec =
      [&](const nlohmann::json& node) -> ParityDecisionTree::NodePtr {
    if (node.contains("leaf")) {
      int v = node.at("leaf").get<int>();
      if (v != 0 && v != 1) throw parse_error("tree leaf must be 0 or 1");
      return ParityDecisionTree::leaf(v);
    }
    if (!node.contains("q") || !node.contains("0") || !node.contains("1"))
      throw parse_error("tree node needs \"q\", \"0\" and \"1\"");
    const auto& q = node.at("q");
    std::string kind = q.at("kind").get<std::string>();
    ParityQuery pq;
    if (kind == "var") {
      pq.i = q.at("i").get<int>();
    } else if (kind == "parity") {
      pq.i = q.at("i").get<int>();
      pq.j = q.at("j").get<int>();
      if (pq.j < 1 || pq.j == pq.i)
        throw parse_error("parity query needs distinct i, j");
    } else {
      throw parse_error("unknown query kind \"" + kind + "\"");
    }
    if (pq.i < 1) throw parse_error("query index must be positive");
    return ParityDecisionTree::node(pq, rec(node.at("0")), rec(node.at("1")));
  };
  ParityDecisionTree t;
  t.root = rec(j);
  if (!t.well_formed()) throw parse_error("malformed tree");
  return t;
}

}  // namespace qsep
