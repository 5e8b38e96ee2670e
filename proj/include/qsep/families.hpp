#pragma once

// Parametric families of query-friendly functions, each built as its
// defining tree plus (within materialization caps) the extracted truth
// table.
//
// Shared conventions: variables are labeled in level order, left to right,
// starting at x1; partially filled levels pack their internal nodes
// leftmost; every leaf's value is the last branch bit taken to reach it.
// With heap indexing (root 1, children of m at 2m and 2m+1) these rules
// collapse to pleasant closed forms: a leftmost-packed internal node's
// variable equals its heap index, and a leaf at heap index m carries m & 1.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsep/bits.hpp"
#include "qsep/decision_tree.hpp"
#include "qsep/depth.hpp"
#include "qsep/errors.hpp"
#include "qsep/parity_tree.hpp"
#include "qsep/truth_table.hpp"

namespace qsep {

enum class Family { full_tree, fn1, fn2, parity_complete, separable };

struct FamilySpec {
  Family family;
  int param = 0;  // k for full_tree / parity_complete, n otherwise
};

struct BuiltFamily {
  int n = 0;
  std::optional<DecisionTree> tree;         // deterministic families
  std::optional<ParityDecisionTree> ptree;  // parity families
  std::optional<TruthTable> table;          // when n is within the cap
};

namespace detail {

constexpr int kMaxTreeVars = 1023;  // tree-only outputs stay modest

// Deterministic leftmost-packed shape: heap indices 1..n are internal.
inline DecisionTree::NodePtr packed_tree(uint32_t h, uint32_t n) {
  if (h > n) return DecisionTree::leaf(int(h & 1));
  return DecisionTree::node(int(h), packed_tree(2 * h, n),
                            packed_tree(2 * h + 1, n));
}

}  // namespace detail

// Complete depth-k tree on 2^k - 1 distinct variables.
inline BuiltFamily build_full_tree(int k) {
  if (k < 1) throw std::invalid_argument("full_tree needs k >= 1");
  if (k > 10)
    throw cap_error("full_tree capped at k = 10 (tree would have 2^k-1 = " +
                    std::to_string((1 << std::min(k, 30)) - 1) + " variables)");
  BuiltFamily out;
  out.n = (1 << k) - 1;
  out.tree = DecisionTree{detail::packed_tree(1, uint32_t(out.n))};
  if (out.n <= 15) out.table = tree_function(*out.tree, out.n);
  return out;
}

// Depth-k deterministic tree on n variables, 2^{k-1}-1 < n < 2^k-1: the
// first k-1 levels are complete, the remaining n - 2^{k-1} + 1 internal
// nodes sit leftmost at level k.
inline BuiltFamily build_fn1(int n) {
  int k = n >= 1 ? dq(n) : 0;
  if (n < 2 || n == (1 << k) - 1)
    throw std::invalid_argument(
        "fn1 needs 2^(k-1)-1 < n < 2^k-1 for some k (n = 2^k-1 is the "
        "complete tree; use full_tree)");
  if (n > detail::kMaxTreeVars)
    throw cap_error("fn1 capped at n = " +
                    std::to_string(detail::kMaxTreeVars));
  BuiltFamily out;
  out.n = n;
  out.tree = DecisionTree{detail::packed_tree(1, uint32_t(n))};
  if (n <= 15) out.table = tree_function(*out.tree, n);
  return out;
}

namespace detail {

inline ParityDecisionTree::NodePtr fn2_node(uint32_t h, int n,
                                            uint32_t backbone_top,
                                            uint32_t slot_count,
                                            bool odd_residue) {
  if (h < backbone_top)
    return ParityDecisionTree::single(
        int(h), fn2_node(2 * h, n, backbone_top, slot_count, odd_residue),
        fn2_node(2 * h + 1, n, backbone_top, slot_count, odd_residue));
  uint32_t slot = h - backbone_top;
  if (slot >= slot_count) return ParityDecisionTree::leaf(int(h & 1));
  auto l0 = ParityDecisionTree::leaf(0);
  auto l1 = ParityDecisionTree::leaf(1);
  if (odd_residue && slot == slot_count - 1)
    return ParityDecisionTree::single(n, l0, l1);
  int a = int(backbone_top + 2 * slot);
  return ParityDecisionTree::pair(a, a + 1, l0, l1);
}

}  // namespace detail

// Depth-(k-1) parity tree on n variables, 2^{k-1}-1 < n <= 2^{k-1}+2^{k-2}-1:
// a complete single-variable backbone of depth k-2 (variables
// x1..x_{2^{k-2}-1}) whose last level carries ceil((n-2^{k-2}+1)/2) nodes of
// pair queries, packed leftmost; an odd residue puts the lone
// single-variable query (x_n) at the rightmost node.
inline BuiltFamily build_fn2(int n) {
  int k = n >= 1 ? ceil_log2(uint64_t(n) + 1) : 0;
  bool admissible =
      n >= 2 && k >= 2 && n <= (1 << (k - 1)) + (1 << (k - 2)) - 1;
  if (!admissible)
    throw std::invalid_argument(
        "fn2 needs 2^(k-1)-1 < n <= 2^(k-1)+2^(k-2)-1 for some k >= 2 "
        "(n = 2, 4, 5, 8..11, 16..23, ...)");
  if (n > detail::kMaxTreeVars)
    throw cap_error("fn2 capped at n = " +
                    std::to_string(detail::kMaxTreeVars));
  uint32_t backbone_top = uint32_t(1) << (k - 2);
  uint32_t residue = uint32_t(n) - backbone_top + 1;
  uint32_t slots = (residue + 1) / 2;
  BuiltFamily out;
  out.n = n;
  out.ptree = ParityDecisionTree{
      detail::fn2_node(1, n, backbone_top, slots, residue % 2 == 1)};
  if (n <= 15) out.table = ptree_function(*out.ptree, n);
  return out;
}

namespace detail {

inline ParityDecisionTree::NodePtr pairs_complete(uint32_t h, uint32_t top) {
  if (h >= top) return ParityDecisionTree::leaf(int(h & 1));
  return ParityDecisionTree::pair(int(2 * h - 1), int(2 * h),
                                  pairs_complete(2 * h, top),
                                  pairs_complete(2 * h + 1, top));
}

}  // namespace detail

// Complete depth-k parity tree, every node a pair query, on 2^{k+1} - 2
// distinct variables.
inline BuiltFamily build_parity_complete(int k) {
  if (k < 1) throw std::invalid_argument("parity_complete needs k >= 1");
  if (k > 9)
    throw cap_error("parity_complete capped at k = 9");
  BuiltFamily out;
  out.n = (1 << (k + 1)) - 2;
  out.ptree =
      ParityDecisionTree{detail::pairs_complete(1, uint32_t(1) << k)};
  if (out.n <= 14) out.table = ptree_function(*out.ptree, out.n);
  return out;
}

namespace detail {

inline ParityDecisionTree::NodePtr separable_node(
    uint32_t h, uint32_t top, const std::vector<int>& first_var,
    const std::vector<bool>& is_pair) {
  if (h >= top) return ParityDecisionTree::leaf(int(h & 1));
  auto c0 = separable_node(2 * h, top, first_var, is_pair);
  auto c1 = separable_node(2 * h + 1, top, first_var, is_pair);
  int v = first_var[h];
  if (is_pair[h]) return ParityDecisionTree::pair(v, v + 1, c0, c1);
  return ParityDecisionTree::single(v, c0, c1);
}

}  // namespace detail

// Complete depth-(k-1) parity tree on n variables, 2^{k-1}-1 < n < 2^k-1:
// y = n - 2^{k-1} + 1 of its internal nodes carry pair queries — assigned
// deepest level first, leftmost within a level — and the rest carry single
// variables; labels are level-order.  Its parity depth k-1 beats dq(n).
inline BuiltFamily build_separable(int n) {
  int k = n >= 1 ? dq(n) : 0;
  if (n < 2 || n == (1 << k) - 1)
    throw std::invalid_argument(
        "separable needs 2^(k-1)-1 < n < 2^k-1 for some k (n = 2^k-1 "
        "admits no pair nodes)");
  if (n > detail::kMaxTreeVars)
    throw cap_error("separable capped at n = " +
                    std::to_string(detail::kMaxTreeVars));
  uint32_t internal = (uint32_t(1) << (k - 1)) - 1;  // heap 1..internal
  uint32_t y = uint32_t(n) - (uint32_t(1) << (k - 1)) + 1;
  std::vector<bool> is_pair(internal + 1, false);
  uint32_t left = y;
  for (int level = k - 1; level >= 1 && left > 0; --level) {
    uint32_t lo = uint32_t(1) << (level - 1), hi = (uint32_t(1) << level) - 1;
    for (uint32_t h = lo; h <= hi && left > 0; ++h, --left) is_pair[h] = true;
  }
  std::vector<int> first_var(internal + 1, 0);
  int next = 1;
  for (uint32_t h = 1; h <= internal; ++h) {
    first_var[h] = next;
    next += is_pair[h] ? 2 : 1;
  }
  BuiltFamily out;
  out.n = n;
  out.ptree = ParityDecisionTree{detail::separable_node(
      1, uint32_t(1) << (k - 1), first_var, is_pair)};
  if (n <= 14) out.table = ptree_function(*out.ptree, n);
  return out;
}

// s*g xor (s xor 1)*h on |g| + |h| + 1 variables; the fresh selector s is
// the last variable, g keeps its indices, h is shifted up by |g|.
// Restricting s = 1 recovers g; s = 0 recovers h.
inline TruthTable selector_combine(const TruthTable& g, const TruthTable& h) {
  int n = g.n() + h.n() + 1;
  const uint32_t gmask = (uint32_t(1) << g.n()) - 1;
  return TruthTable::from_function(n, [&](uint32_t x) {
    bool s = (x >> (n - 1)) & 1u;
    return s ? g.get(x & gmask) : h.get((x >> g.n()) & ((uint32_t(1) << h.n()) - 1));
  });
}

inline BuiltFamily build_family(const FamilySpec& spec) {
  switch (spec.family) {
    case Family::full_tree: return build_full_tree(spec.param);
    case Family::fn1: return build_fn1(spec.param);
    case Family::fn2: return build_fn2(spec.param);
    case Family::parity_complete: return build_parity_complete(spec.param);
    case Family::separable: return build_separable(spec.param);
  }
  throw std::invalid_argument("unknown family");
}

}  // namespace qsep
