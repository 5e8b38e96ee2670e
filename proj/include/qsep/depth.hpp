#pragma once

// Exact minimum decision-tree depth, deterministic and parity flavours.
//
// Both searches share one scheme: a state is the current subfunction,
// compacted onto its surviving variables, together with the set of original
// variable ids it still mentions.  The memo key is that pair (ascending
// support mask, packed compacted table), so restrictions of distinct
// parents that collapse to the same subfunction are shared.  Recursion:
// depth 0 iff constant, else 1 + the best max over the two branches of any
// admissible query; only influencing variables are worth querying, and the
// search stops early once it hits the floor (ceil(log2(#influencing + 1))
// for deterministic trees; for parity trees additionally the algebraic
// degree, and the 2^(d+1) - 2 bound on influencing variables).
//
// Ties are broken toward the lowest variable index (singles before pairs,
// pairs in lexicographic order), which makes witness trees deterministic.

#include <climits>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "qsep/anf.hpp"
#include "qsep/bits.hpp"
#include "qsep/decision_tree.hpp"
#include "qsep/errors.hpp"
#include "qsep/parity_tree.hpp"
#include "qsep/truth_table.hpp"

namespace qsep {

// Minimum depth of a decision tree all of whose variables are distinct:
// ceil(log2(n + 1)).  Any function with n influencing variables needs at
// least this depth.
inline int dq(int n) {
  if (n < 0) throw std::invalid_argument("dq needs n >= 0");
  return ceil_log2(uint64_t(n) + 1);
}

namespace detail {

// ---- packed single-word kernels (m <= 6 variables) ----

inline uint64_t size_mask64(int m) {
  return m >= 6 ? ~0ull : (1ull << (1u << m)) - 1ull;
}

// Table of the projection x_(v+1) on m variables.
inline uint64_t projection64(int m, int v) {
  return ~kLowHalfMask[v] & size_mask64(m);
}

inline bool depends64(uint64_t w, int m, int v) {
  return (((w >> (1u << v)) ^ w) & kLowHalfMask[v] & size_mask64(m)) != 0;
}

// Bit v set iff the function depends on variable position v.
inline uint32_t influencing_mask64(uint64_t w, int m) {
  uint32_t r = 0;
  for (int v = 0; v < m; ++v)
    if (depends64(w, m, v)) r |= 1u << v;
  return r;
}

// Fix position v to b and drop it from the index space.
inline uint64_t restrict64(uint64_t w, int m, int v, int b) {
  uint64_t r = 0;
  for (uint32_t x = 0; x < (1u << (m - 1)); ++x)
    r |= ((w >> insert_index_bit(x, v, uint32_t(b))) & 1ull) << x;
  return r;
}

// Is there a deterministic tree of depth <= d?  Bounded search without a
// memo; meant for wide scans over many small functions.
inline bool depth_at_most64(uint64_t w, int m, int d) {
  uint64_t full = size_mask64(m);
  w &= full;
  if (w == 0 || w == full) return true;
  if (d <= 0) return false;
  uint32_t infl = influencing_mask64(w, m);
  int ic = std::popcount(infl);
  if (ic == 1) return true;
  if (ic > (1 << d) - 1 || d == 1) return false;
  for (int v = 0; v < m; ++v)
    if (infl >> v & 1) {
      if (depth_at_most64(restrict64(w, m, v, 0), m - 1, d - 1) &&
          depth_at_most64(restrict64(w, m, v, 1), m - 1, d - 1))
        return true;
    }
  return false;
}

// ---- general multi-word state for the memoized searches ----

struct SearchFn {
  int m = 0;
  std::vector<uint64_t> w;
  std::vector<int> ids;  // ids[pos] = original (1-based) variable id
};

inline bool fn_constant(const SearchFn& f, int* value) {
  uint64_t head = (f.w[0] & 1ull) ? ~0ull : 0ull;
  uint64_t tail = f.m >= 6 ? ~0ull : (1ull << (1u << f.m)) - 1ull;
  for (size_t i = 0; i + 1 < f.w.size(); ++i)
    if (f.w[i] != head) return false;
  if (f.w.back() != (head & tail)) return false;
  if (value) *value = int(f.w[0] & 1ull);
  return true;
}

inline bool fn_get(const SearchFn& f, uint32_t x) {
  return (f.w[x >> 6] >> (x & 63)) & 1ull;
}

inline bool fn_depends(const SearchFn& f, int v) {
  if (v < 6) {
    uint64_t tail = f.m >= 6 ? ~0ull : (1ull << (1u << f.m)) - 1ull;
    int sh = 1 << v;
    for (size_t i = 0; i < f.w.size(); ++i)
      if (((f.w[i] >> sh) ^ f.w[i]) & kLowHalfMask[v] &
          (i + 1 == f.w.size() ? tail : ~0ull))
        return true;
    return false;
  }
  size_t stride = size_t(1) << (v - 6);
  for (size_t base = 0; base < f.w.size(); base += 2 * stride)
    for (size_t k = 0; k < stride; ++k)
      if (f.w[base + k] != f.w[base + stride + k]) return true;
  return false;
}

inline std::vector<int> fn_influencing(const SearchFn& f) {
  std::vector<int> out;
  for (int v = 0; v < f.m; ++v)
    if (fn_depends(f, v)) out.push_back(v);
  return out;
}

inline SearchFn fn_restrict(const SearchFn& f, int v, int b) {
  SearchFn r;
  r.m = f.m - 1;
  r.w.assign(size_t(1) << std::max(0, r.m - 6), 0);
  for (uint32_t x = 0; x < (1u << r.m); ++x)
    if (fn_get(f, insert_index_bit(x, v, uint32_t(b))))
      r.w[x >> 6] |= 1ull << (x & 63);
  r.ids = f.ids;
  r.ids.erase(r.ids.begin() + v);
  return r;
}

// Branch b of a parity query on positions (u, v): substitute
// x_v := x_u XOR b and drop position v.
inline SearchFn fn_restrict_parity(const SearchFn& f, int u, int v, int b) {
  SearchFn r;
  r.m = f.m - 1;
  r.w.assign(size_t(1) << std::max(0, r.m - 6), 0);
  int u_reduced = u < v ? u : u - 1;
  for (uint32_t x = 0; x < (1u << r.m); ++x) {
    uint32_t xu = (x >> u_reduced) & 1u;
    if (fn_get(f, insert_index_bit(x, v, xu ^ uint32_t(b))))
      r.w[x >> 6] |= 1ull << (x & 63);
  }
  r.ids = f.ids;
  r.ids.erase(r.ids.begin() + v);
  return r;
}

inline int fn_degree(const SearchFn& f) {
  std::vector<uint64_t> w = f.w;
  xor_mobius_inplace(w, f.m);
  if (f.m < 6) w[0] &= (1ull << (1u << f.m)) - 1ull;
  int d = 0;
  for (uint32_t x = 0; x < (1u << f.m); ++x)
    if ((w[x >> 6] >> (x & 63)) & 1ull) d = std::max(d, std::popcount(x));
  return d;
}

struct StateKey {
  uint32_t support = 0;
  std::vector<uint64_t> w;
  friend bool operator==(const StateKey&, const StateKey&) = default;
};

struct StateKeyHash {
  size_t operator()(const StateKey& k) const {
    uint64_t h = 0x9e3779b97f4a7c15ull ^ k.support;
    for (uint64_t x : k.w) h = (h ^ x) * 0x100000001b3ull;
    return size_t(h);
  }
};

inline StateKey make_key(const SearchFn& f) {
  StateKey k;
  for (int id : f.ids) k.support |= 1u << (id - 1);
  k.w = f.w;
  return k;
}

}  // namespace detail

// Memo caches.  A cache may be shared across calls (and threads: lookups
// take a shared lock, inserts an exclusive one; re-inserting a key always
// writes the same value).  Deterministic and parity searches use distinct
// cache types so they cannot be cross-wired.
class DepthCacheBase {
 public:
  std::optional<int> find(const detail::StateKey& k) const {
    std::shared_lock lock(mu_);
    auto it = map_.find(k);
    if (it == map_.end()) return std::nullopt;
    return int(it->second);
  }
  void store(const detail::StateKey& k, int depth) {
    std::unique_lock lock(mu_);
    map_.emplace(k, int8_t(depth));
  }
  size_t size() const {
    std::shared_lock lock(mu_);
    return map_.size();
  }

 private:
  std::unordered_map<detail::StateKey, int8_t, detail::StateKeyHash> map_;
  mutable std::shared_mutex mu_;
};

class DepthCache : public DepthCacheBase {};
class ParityDepthCache : public DepthCacheBase {};

struct DepthOptions {
  int max_n = 6;  // refuse wider functions unless the caller raises this
  DepthCache* cache = nullptr;
};

struct ParityDepthOptions {
  int max_n = 5;
  ParityDepthCache* cache = nullptr;
};

namespace detail {

constexpr int kSearchCeiling = 12;

inline int depth_rec(const SearchFn& f, DepthCache& cache) {
  if (fn_constant(f, nullptr)) return 0;
  std::vector<int> infl = fn_influencing(f);
  if (infl.size() == 1) return 1;
  StateKey key = make_key(f);
  if (auto hit = cache.find(key)) return *hit;
  int lb = ceil_log2(uint64_t(infl.size()) + 1);
  int best = INT_MAX;
  for (int v : infl) {
    int d0 = depth_rec(fn_restrict(f, v, 0), cache);
    int d1 = depth_rec(fn_restrict(f, v, 1), cache);
    best = std::min(best, 1 + std::max(d0, d1));
    if (best == lb) break;
  }
  cache.store(key, best);
  return best;
}

inline DecisionTree::NodePtr depth_witness_rec(const SearchFn& f,
                                               DepthCache& cache) {
  int cval = 0;
  if (fn_constant(f, &cval)) return DecisionTree::leaf(cval);
  int target = depth_rec(f, cache);
  for (int v : fn_influencing(f)) {
    SearchFn f0 = fn_restrict(f, v, 0);
    SearchFn f1 = fn_restrict(f, v, 1);
    if (1 + std::max(depth_rec(f0, cache), depth_rec(f1, cache)) == target)
      return DecisionTree::node(f.ids[v], depth_witness_rec(f0, cache),
                                depth_witness_rec(f1, cache));
  }
  throw std::logic_error("no branch reproduces the memoized depth");
}

inline int parity_lb(const SearchFn& f, const std::vector<int>& infl) {
  // A depth-d parity tree touches at most 2^(d+1) - 2 variables, and its
  // function has algebraic degree at most d.
  int by_count = ceil_log2(uint64_t(infl.size()) + 2) - 1;
  return std::max(by_count, fn_degree(f));
}

inline int parity_rec(const SearchFn& f, ParityDepthCache& cache) {
  if (fn_constant(f, nullptr)) return 0;
  std::vector<int> infl = fn_influencing(f);
  if (infl.size() == 1) return 1;
  StateKey key = make_key(f);
  if (auto hit = cache.find(key)) return *hit;
  int lb = parity_lb(f, infl);
  int best = INT_MAX;
  auto try_children = [&](const SearchFn& c0, const SearchFn& c1) {
    best = std::min(
        best, 1 + std::max(parity_rec(c0, cache), parity_rec(c1, cache)));
  };
  for (size_t a = 0; a < infl.size() && best != lb; ++a)
    try_children(fn_restrict(f, infl[a], 0), fn_restrict(f, infl[a], 1));
  for (size_t a = 0; a < infl.size() && best != lb; ++a)
    for (size_t b = a + 1; b < infl.size() && best != lb; ++b)
      try_children(fn_restrict_parity(f, infl[a], infl[b], 0),
                   fn_restrict_parity(f, infl[a], infl[b], 1));
  cache.store(key, best);
  return best;
}

inline ParityDecisionTree::NodePtr parity_witness_rec(
    const SearchFn& f, ParityDepthCache& cache) {
  int cval = 0;
  if (fn_constant(f, &cval)) return ParityDecisionTree::leaf(cval);
  int target = parity_rec(f, cache);
  std::vector<int> infl = fn_influencing(f);
  for (int v : infl) {
    SearchFn f0 = fn_restrict(f, v, 0);
    SearchFn f1 = fn_restrict(f, v, 1);
    if (1 + std::max(parity_rec(f0, cache), parity_rec(f1, cache)) == target)
      return ParityDecisionTree::single(f.ids[v],
                                        parity_witness_rec(f0, cache),
                                        parity_witness_rec(f1, cache));
  }
  for (size_t a = 0; a < infl.size(); ++a)
    for (size_t b = a + 1; b < infl.size(); ++b) {
      SearchFn f0 = fn_restrict_parity(f, infl[a], infl[b], 0);
      SearchFn f1 = fn_restrict_parity(f, infl[a], infl[b], 1);
      if (1 + std::max(parity_rec(f0, cache), parity_rec(f1, cache)) ==
          target)
        return ParityDecisionTree::pair(f.ids[infl[a]], f.ids[infl[b]],
                                        parity_witness_rec(f0, cache),
                                        parity_witness_rec(f1, cache));
    }
  throw std::logic_error("no query reproduces the memoized parity depth");
}

inline SearchFn fn_from_table(const TruthTable& f) {
  SearchFn s;
  s.m = f.n();
  s.w = f.words();
  s.ids.resize(f.n());
  std::iota(s.ids.begin(), s.ids.end(), 1);
  return s;
}

inline void check_search_cap(const TruthTable& f, int max_n,
                             const char* what) {
  if (max_n > kSearchCeiling)
    throw cap_error(std::string(what) + " cap cannot exceed " +
                    std::to_string(kSearchCeiling));
  if (f.n() > max_n)
    throw cap_error(std::string(what) + " capped at " + std::to_string(max_n) +
                    " variables (raise max_n to override)");
}

}  // namespace detail

inline int optimal_depth(const TruthTable& f, const DepthOptions& opts = {}) {
  detail::check_search_cap(f, opts.max_n, "optimal_depth");
  DepthCache local;
  return detail::depth_rec(detail::fn_from_table(f),
                           opts.cache ? *opts.cache : local);
}

inline std::pair<int, DecisionTree> optimal_depth_witness(
    const TruthTable& f, const DepthOptions& opts = {}) {
  detail::check_search_cap(f, opts.max_n, "optimal_depth");
  DepthCache local;
  DepthCache& cache = opts.cache ? *opts.cache : local;
  detail::SearchFn s = detail::fn_from_table(f);
  int d = detail::depth_rec(s, cache);
  DecisionTree t;
  t.root = detail::depth_witness_rec(s, cache);
  return {d, t};
}

inline int optimal_parity_depth(const TruthTable& f,
                                const ParityDepthOptions& opts = {}) {
  detail::check_search_cap(f, opts.max_n, "optimal_parity_depth");
  ParityDepthCache local;
  return detail::parity_rec(detail::fn_from_table(f),
                            opts.cache ? *opts.cache : local);
}

inline std::pair<int, ParityDecisionTree> optimal_parity_depth_witness(
    const TruthTable& f, const ParityDepthOptions& opts = {}) {
  detail::check_search_cap(f, opts.max_n, "optimal_parity_depth");
  ParityDepthCache local;
  ParityDepthCache& cache = opts.cache ? *opts.cache : local;
  detail::SearchFn s = detail::fn_from_table(f);
  int d = detail::parity_rec(s, cache);
  ParityDecisionTree t;
  t.root = detail::parity_witness_rec(s, cache);
  return {d, t};
}

}  // namespace qsep
