#pragma once

// Lower- and upper-bound certificates for exact quantum query complexity.
//
// A reduction certificate says: after fixing the variables in `restriction`,
// f collapses (up to variables that no longer influence it) to
//
//   output_polarity XOR product over literals of (x_v XOR negated)
//
// i.e. an AND of k literals, possibly complemented.  Since the k-bit AND
// needs k exact quantum queries, a verified certificate witnesses a lower
// bound of k.  Upper bounds come from parity/decision trees.  Verification
// is pointwise over the restricted table, so a certificate never passes for
// the wrong reason.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qsep/anf.hpp"
#include "qsep/boolfun.hpp"
#include "qsep/decision_tree.hpp"
#include "qsep/depth.hpp"
#include "qsep/errors.hpp"
#include "qsep/parity_tree.hpp"
#include "qsep/real_poly.hpp"
#include "qsep/truth_table.hpp"

namespace qsep {

struct ReductionCertificate {
  int k = 0;
  std::map<int, int> restriction;             // original var id -> 0/1
  std::vector<std::pair<int, bool>> literals;  // (original var id, negated)
  bool output_polarity = false;

  friend bool operator==(const ReductionCertificate&,
                         const ReductionCertificate&) = default;
};

// Apply a restriction given in original variable ids; returns the table on
// the survivors plus the id map (ids[pos] = original id of new var pos+1).
inline std::pair<TruthTable, std::vector<int>> apply_restriction(
    const TruthTable& f, const std::map<int, int>& fix) {
  TruthTable cur = f;
  std::vector<int> ids(f.n());
  for (int i = 0; i < f.n(); ++i) ids[i] = i + 1;
  // Fix highest ids first so earlier positions stay valid.
  for (auto it = fix.rbegin(); it != fix.rend(); ++it) {
    auto pos = std::find(ids.begin(), ids.end(), it->first);
    if (pos == ids.end())
      throw std::invalid_argument("restriction names an unknown variable");
    if (it->second != 0 && it->second != 1)
      throw std::invalid_argument("restriction values must be 0 or 1");
    Subfunction s = restrict_var(cur, int(pos - ids.begin()) + 1,
                                 it->second != 0);
    cur = std::move(s.table);
    ids.erase(pos);
  }
  return {cur, ids};
}

inline bool verify_reduction(const TruthTable& f,
                             const ReductionCertificate& cert) {
  if (cert.k < 1 || int(cert.literals.size()) != cert.k) return false;
  for (auto& [v, val] : cert.restriction)
    if (v < 1 || v > f.n() || (val != 0 && val != 1)) return false;
  auto [g, ids] = apply_restriction(f, cert.restriction);
  std::vector<int> lit_pos;
  for (auto& [v, neg] : cert.literals) {
    auto at = std::find(ids.begin(), ids.end(), v);
    if (at == ids.end()) return false;  // fixed or out of range
    lit_pos.push_back(int(at - ids.begin()));
  }
  std::vector<int> sorted = lit_pos;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    return false;  // duplicate literal
  for (uint32_t x = 0; x < g.size(); ++x) {
    bool prod = true;
    for (size_t t = 0; t < lit_pos.size(); ++t)
      prod = prod && (((x >> lit_pos[t]) & 1u) ^
                      uint32_t(cert.literals[t].second));
    if (g.get(x) != (cert.output_polarity ^ prod)) return false;
  }
  return true;
}

namespace detail {

// Steer a subtree to a leaf with the wanted value, preferring the branch
// equal to the value; fixes exactly the variables along the steering path.
inline bool steer_to_leaf(const DecisionTree::Node* n, int want,
                          std::map<int, int>* fix) {
  if (n->var == 0) return n->value == want;
  for (int first : {want, 1 - want}) {
    std::map<int, int> local = *fix;
    local[n->var] = first;
    const DecisionTree::Node* c =
        first ? n->child1.get() : n->child0.get();
    if (steer_to_leaf(c, want, &local)) {
      *fix = std::move(local);
      return true;
    }
  }
  return false;
}

inline void collect_vars(const DecisionTree::Node* n, std::vector<int>* out) {
  if (!n || n->var == 0) return;
  out->push_back(n->var);
  collect_vars(n->child0.get(), out);
  collect_vars(n->child1.get(), out);
}

// All root-to-deepest-internal-node paths, branch-1 side first.  A path is
// the list of (node, branch-taken) with the last node's branch unset.
struct TreePath {
  std::vector<const DecisionTree::Node*> nodes;
  std::vector<int> branches;  // branches[t] taken after nodes[t]; size k-1
};

inline void full_depth_paths(const DecisionTree::Node* n, int depth_left,
                             TreePath* cur, std::vector<TreePath>* out) {
  if (n->var == 0) return;
  cur->nodes.push_back(n);
  if (depth_left == 1) {
    if (n->child0->var == 0 && n->child1->var == 0) out->push_back(*cur);
  } else {
    for (int b : {1, 0}) {
      cur->branches.push_back(b);
      full_depth_paths(b ? n->child1.get() : n->child0.get(), depth_left - 1,
                       cur, out);
      cur->branches.pop_back();
    }
  }
  cur->nodes.pop_back();
}

}  // namespace detail

// Extract an AND_k certificate from a depth-k tree in which every variable
// occurs at most once and some root-to-leaf path is internal at every
// level.  Off-path subtrees are pinned to the chosen constant by fixing the
// variables along one steering path each; variables the steering never
// reaches stay free and end up non-influencing.
inline ReductionCertificate reduction_from_tree(const DecisionTree& t) {
  std::vector<int> vars;
  detail::collect_vars(t.root.get(), &vars);
  std::sort(vars.begin(), vars.end());
  if (std::adjacent_find(vars.begin(), vars.end()) != vars.end())
    throw std::invalid_argument(
        "reduction_from_tree needs each variable to occur at most once");
  int k = t.depth();
  if (k < 1) throw std::invalid_argument("tree is a bare leaf");
  std::vector<detail::TreePath> paths;
  detail::TreePath scratch;
  detail::full_depth_paths(t.root.get(), k, &scratch, &paths);
  if (paths.empty())
    throw std::invalid_argument("no root-to-leaf path reaches full depth");

  for (const auto& path : paths)
    for (int z : {0, 1}) {
      ReductionCertificate cert;
      cert.k = k;
      cert.output_polarity = z != 0;
      bool ok = true;
      // Deviations before the deepest node must land on z.
      for (int tlev = 0; tlev + 1 < k && ok; ++tlev) {
        int taken = path.branches[tlev];
        const DecisionTree::Node* sib = taken
                                            ? path.nodes[tlev]->child0.get()
                                            : path.nodes[tlev]->child1.get();
        ok = detail::steer_to_leaf(sib, z, &cert.restriction);
      }
      if (!ok) continue;
      // The deepest node needs one leaf at z (its deviation) and one at
      // 1 - z (the point where the AND fires).
      const DecisionTree::Node* last = path.nodes.back();
      int v0 = last->child0->value, v1 = last->child1->value;
      if (v0 == v1) continue;
      int cstar = (v1 == 1 - z) ? 1 : 0;
      for (int tlev = 0; tlev + 1 < k; ++tlev)
        cert.literals.emplace_back(path.nodes[tlev]->var,
                                   path.branches[tlev] == 0);
      cert.literals.emplace_back(last->var, cstar == 0);
      return cert;
    }
  throw std::invalid_argument("tree admits no AND reduction of full depth");
}

// Exhaustive search for an AND_k reduction: partial assignments ordered by
// number of fixed variables, then lexicographically; first hit wins.
// Capped at 6 variables.
inline std::optional<ReductionCertificate> find_and_reduction(
    const TruthTable& f, int k) {
  constexpr int kMax = 6;
  if (f.n() > kMax)
    throw cap_error("find_and_reduction capped at " + std::to_string(kMax) +
                    " variables");
  if (k < 1 || k > f.n()) return std::nullopt;
  int n = f.n();

  auto check = [&](const std::vector<int>& subset,
                   uint32_t values) -> std::optional<ReductionCertificate> {
    std::map<int, int> fix;
    for (size_t t = 0; t < subset.size(); ++t)
      fix[subset[t]] = int(values >> t & 1u);
    auto [g, ids] = apply_restriction(f, fix);
    std::vector<int> infl = influencing_variables(g);
    if (int(infl.size()) != k) return std::nullopt;
    // Compact onto the influencing variables and look for a single point
    // disagreeing with the majority constant: that is exactly an AND of k
    // literals, possibly complemented.
    TruthTable gc = TruthTable::from_function(k, [&](uint32_t x) {
      uint32_t y = 0;
      for (int t = 0; t < k; ++t) y |= ((x >> t) & 1u) << (infl[t] - 1);
      return g.get(y);
    });
    uint32_t ones = gc.count_ones();
    uint32_t star;
    bool out_pol;
    if (ones == 1) {
      out_pol = false;
      star = 0;
      while (!gc.get(star)) ++star;
    } else if (ones == gc.size() - 1) {
      out_pol = true;
      star = 0;
      while (gc.get(star)) ++star;
    } else {
      return std::nullopt;
    }
    ReductionCertificate cert;
    cert.k = k;
    cert.restriction = fix;
    cert.output_polarity = out_pol;
    for (int t = 0; t < k; ++t)
      cert.literals.emplace_back(ids[infl[t] - 1], ((star >> t) & 1u) == 0);
    return cert;
  };

  for (int fixed = 0; fixed + k <= n; ++fixed) {
    // Lexicographic combinations of `fixed` variables out of 1..n.
    std::vector<int> subset(fixed);
    std::vector<bool> select(n, false);
    std::fill(select.begin(), select.begin() + fixed, true);
    // std::prev_permutation over the mask enumerates combinations in
    // lexicographic order of the index lists.
    do {
      int at = 0;
      for (int i = 0; i < n; ++i)
        if (select[i]) subset[at++] = i + 1;
      for (uint32_t values = 0; values < (1u << fixed); ++values)
        if (auto cert = check(subset, values)) return cert;
    } while (std::prev_permutation(select.begin(), select.end()));
  }
  return std::nullopt;
}

// Largest k admitting an AND_k reduction (0 when even k=1 fails).  Sound to
// stop at the first absent k: dropping one literal of a verified AND_k
// certificate (fixing its variable to the non-constant polarity) yields an
// AND_(k-1) certificate, so presence is downward closed.
inline int best_and_reduction(const TruthTable& f) {
  int best = 0;
  for (int k = 1; k <= f.n(); ++k) {
    if (!find_and_reduction(f, k)) break;
    best = k;
  }
  return best;
}

enum class BoundSource {
  real_degree_half,
  and_reduction,
  parity_tree,
  decision_tree,
  trivial,
};

inline const char* to_string(BoundSource s) {
  switch (s) {
    case BoundSource::real_degree_half: return "REAL_DEGREE_HALF";
    case BoundSource::and_reduction: return "AND_REDUCTION";
    case BoundSource::parity_tree: return "PARITY_TREE";
    case BoundSource::decision_tree: return "DETERMINISTIC_TREE";
    case BoundSource::trivial: return "TRIVIAL";
  }
  return "?";
}

struct QeBoundsOptions {
  int max_depth_n = 6;
  int max_parity_n = 5;
  int max_reduction_n = 6;
  int max_real_n = 16;
  DepthCache* depth_cache = nullptr;
  ParityDepthCache* parity_cache = nullptr;
};

struct QeBounds {
  int lo = 0;
  int hi = 0;
  BoundSource lo_source = BoundSource::trivial;
  BoundSource hi_source = BoundSource::trivial;
  bool partial = false;  // a side had no source within its caps
  int real_deg = -1;     // -1 = not computed
  int best_and_k = -1;
  int optimal_depth = -1;
  int optimal_parity = -1;
  std::optional<ReductionCertificate> lo_certificate;
  std::optional<ParityDecisionTree> parity_witness;
  std::optional<DecisionTree> depth_witness;
};

// Two-sided bounds on exact quantum query complexity:
//   lo = max(ceil(real_degree / 2), best AND_k reduction)
//   hi = min(optimal parity depth, optimal deterministic depth)
// restricted to the sources whose caps admit f; a side with no admissible
// source falls back to the trivial bound and marks the result partial.
inline QeBounds qe_bounds(const TruthTable& f, const QeBoundsOptions& opts = {}) {
  QeBounds b;
  bool lo_any = false, hi_any = false;

  if (f.n() <= opts.max_real_n) {
    b.real_deg = real_degree(f);
    b.lo = (b.real_deg + 1) / 2;
    b.lo_source = BoundSource::real_degree_half;
    lo_any = true;
  }
  if (f.n() <= opts.max_reduction_n) {
    b.best_and_k = best_and_reduction(f);
    if (!lo_any || (b.best_and_k >= 1 && b.best_and_k >= b.lo)) {
      b.lo = std::max(b.lo, std::max(b.best_and_k, 0));
      b.lo_source = BoundSource::and_reduction;
      if (b.best_and_k >= 1)
        b.lo_certificate = find_and_reduction(f, b.best_and_k);
    }
    lo_any = true;
  }
  if (!lo_any) {
    b.lo = 0;
    b.lo_source = BoundSource::trivial;
    b.partial = true;
  }

  if (f.n() <= opts.max_parity_n) {
    ParityDepthOptions po{opts.max_parity_n, opts.parity_cache};
    auto [d, tree] = optimal_parity_depth_witness(f, po);
    b.optimal_parity = d;
    b.hi = d;
    b.hi_source = BoundSource::parity_tree;
    b.parity_witness = std::move(tree);
    hi_any = true;
  }
  if (f.n() <= opts.max_depth_n) {
    DepthOptions dopts{opts.max_depth_n, opts.depth_cache};
    auto [d, tree] = optimal_depth_witness(f, dopts);
    b.optimal_depth = d;
    if (!hi_any || d < b.hi) {
      b.hi = d;
      b.hi_source = BoundSource::decision_tree;
      b.depth_witness = std::move(tree);
    }
    hi_any = true;
  }
  if (!hi_any) {
    b.hi = f.n();  // every function has a depth-n tree
    b.hi_source = BoundSource::trivial;
    b.partial = true;
  }
  return b;
}

enum class Separability { separable, non_separable, unknown };

inline const char* to_string(Separability s) {
  switch (s) {
    case Separability::separable: return "SEPARABLE";
    case Separability::non_separable: return "NON_SEPARABLE";
    case Separability::unknown: return "UNKNOWN";
  }
  return "?";
}

struct QfClassification {
  bool is_qf = false;       // deterministic depth meets the dq floor
  Separability separability = Separability::unknown;
  int depth = 0;            // optimal deterministic depth
  int dq_floor = 0;         // dq(#influencing variables)
  QeBounds bounds;
};

// Query friendliness: the deterministic optimal depth equals the floor
// dq(#influencing).  Separability: proven separable when the upper bound on
// quantum queries is below the deterministic depth, proven non-separable
// when the lower bound meets it.
inline QfClassification classify_query_friendly(const TruthTable& f,
                                                const QeBoundsOptions& opts = {}) {
  QfClassification c;
  DepthOptions dopts{opts.max_depth_n, opts.depth_cache};
  c.depth = optimal_depth(f, dopts);
  c.dq_floor = dq(influencing_count(f));
  c.is_qf = c.depth == c.dq_floor;
  c.bounds = qe_bounds(f, opts);
  if (c.bounds.hi < c.depth)
    c.separability = Separability::separable;
  else if (c.bounds.lo == c.depth)
    c.separability = Separability::non_separable;
  else
    c.separability = Separability::unknown;
  return c;
}

// ---- JSON forms used by the CLI ----

inline nlohmann::json reduction_to_json(const ReductionCertificate& c) {
  nlohmann::json restr = nlohmann::json::object();
  for (auto& [v, val] : c.restriction) restr[std::to_string(v)] = val;
  nlohmann::json lits = nlohmann::json::array();
  for (auto& [v, neg] : c.literals)
    lits.push_back({{"var", v}, {"negated", neg}});
  return {{"k", c.k},
          {"restriction", restr},
          {"literals", lits},
          {"outputPolarity", c.output_polarity ? 1 : 0}};
}

inline ReductionCertificate reduction_from_json(const nlohmann::json& j) {
  ReductionCertificate c;
  c.k = j.at("k").get<int>();
  for (auto& [key, val] : j.at("restriction").items())
    c.restriction[std::stoi(key)] = val.get<int>();
  for (auto& lit : j.at("literals"))
    c.literals.emplace_back(lit.at("var").get<int>(),
                            lit.at("negated").get<bool>());
  c.output_polarity = j.at("outputPolarity").get<int>() != 0;
  return c;
}

inline nlohmann::json qe_bounds_to_json(const QeBounds& b) {
  nlohmann::json j{{"lo", b.lo},
                   {"hi", b.hi},
                   {"loSource", to_string(b.lo_source)},
                   {"hiSource", to_string(b.hi_source)},
                   {"partial", b.partial}};
  if (b.real_deg >= 0) j["realDegree"] = b.real_deg;
  if (b.best_and_k >= 0) j["bestAndReduction"] = b.best_and_k;
  if (b.lo_certificate) j["loCertificate"] = reduction_to_json(*b.lo_certificate);
  if (b.parity_witness) j["parityWitness"] = ptree_to_json(*b.parity_witness);
  else if (b.depth_witness) j["depthWitness"] = tree_to_json(*b.depth_witness);
  return j;
}

}  // namespace qsep
