#pragma once

// Exact statevector check that a parity decision tree is a valid exact
// quantum query algorithm.  Each node compiles to a one-query subroutine
// over |index register> (ceil(log2 n) qubits, variable i encoded zero-based
// as i-1) tensor |target qubit>; the tree is walked classically with a
// fresh state per node (measure-after-each-query semantics).
//
//   VAR i:      |i-1>|0>  --O_x-->  measure target        = x_i
//   PARITY i j: |i-1>|0>  --R--> (|i-1>+|j-1>)/sqrt2 |0>
//               --(I (x) HX)--> ... |->  --O_x--> phase kickback
//               --R--> measure index register: i-1 => 0, j-1 => 1 = x_i^x_j
//
// Every operator is a dense matrix checked unitary to 1e-12 when built; the
// state norm is checked to 1e-12 after each application; an outcome counts
// as probability-1 only within 1e-9 (off-support amplitude included).

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "qsep/bits.hpp"
#include "qsep/errors.hpp"
#include "qsep/parity_tree.hpp"
#include "qsep/truth_table.hpp"

namespace qsep {

inline constexpr double kUnitaryTol = 1e-12;
inline constexpr double kNormTol = 1e-12;
inline constexpr double kOutcomeTol = 1e-9;

struct QueryState {
  int reg_qubits = 0;  // index register width m; dim = 2^{m+1}
  std::vector<std::complex<double>> amp;  // basis (r, t) at index 2r + t
  int query_count = 0;

  static QueryState basis(int reg_qubits, uint32_t r, uint32_t t) {
    QueryState s;
    s.reg_qubits = reg_qubits;
    s.amp.assign(size_t(2) << reg_qubits, {0.0, 0.0});
    s.amp[2 * r + t] = {1.0, 0.0};
    return s;
  }

  double norm_sq() const {
    double sum = 0;
    for (auto& a : amp) sum += std::norm(a);
    return sum;
  }
};

// Dense operator, verified unitary on construction.
class Unitary {
 public:
  Unitary(int dim, std::vector<std::complex<double>> entries)
      : dim_(dim), m_(std::move(entries)) {
    if (int(m_.size()) != dim_ * dim_)
      throw std::logic_error("operator dimensions mismatch");
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) {
        std::complex<double> dot = 0;
        for (int r = 0; r < dim_; ++r)
          dot += std::conj(m_[r * dim_ + i]) * m_[r * dim_ + j];
        double want = i == j ? 1.0 : 0.0;
        if (std::abs(dot - want) > kUnitaryTol)
          throw std::logic_error("operator failed the unitarity check");
      }
  }

  int dim() const { return dim_; }

  const std::complex<double>& at(int row, int col) const {
    return m_[row * dim_ + col];
  }

  void apply(QueryState& s) const {
    if (int(s.amp.size()) != dim_)
      throw std::logic_error("state dimension mismatch");
    std::vector<std::complex<double>> out(dim_, {0.0, 0.0});
    for (int r = 0; r < dim_; ++r) {
      std::complex<double> acc = 0;
      for (int c = 0; c < dim_; ++c) acc += m_[r * dim_ + c] * s.amp[c];
      out[r] = acc;
    }
    s.amp = std::move(out);
    if (std::abs(s.norm_sq() - 1.0) > kNormTol)
      throw std::logic_error("state norm drifted past tolerance");
  }

 private:
  int dim_;
  std::vector<std::complex<double>> m_;
};

namespace detail {

inline int reg_width(int n) { return n <= 1 ? 0 : int(ceil_log2(uint64_t(n))); }

// O_x: (r, t) -> (r, t xor x_{r+1}) for r < n, identity on padding rows.
inline Unitary oracle_operator(int n, int m, uint32_t x) {
  int dim = 2 << m;
  std::vector<std::complex<double>> e(size_t(dim) * dim, {0.0, 0.0});
  for (int r = 0; r < (1 << m); ++r)
    for (int t = 0; t < 2; ++t) {
      int t_out = r < n ? t ^ int((x >> r) & 1u) : t;
      e[(2 * r + t_out) * dim + (2 * r + t)] = {1.0, 0.0};
    }
  return Unitary(dim, std::move(e));
}

// Hadamard-type interference on index rows a and b (identity elsewhere),
// acting as I on the target: |a> -> (|a>+|b>)/sqrt2, |b> -> (|a>-|b>)/sqrt2.
inline Unitary interference_operator(int m, uint32_t a, uint32_t b) {
  int dim = 2 << m;
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<std::complex<double>> e(size_t(dim) * dim, {0.0, 0.0});
  for (int r = 0; r < (1 << m); ++r)
    for (int t = 0; t < 2; ++t)
      if (uint32_t(r) == a) {
        e[(2 * a + t) * dim + (2 * a + t)] = {s, 0.0};
        e[(2 * b + t) * dim + (2 * a + t)] = {s, 0.0};
      } else if (uint32_t(r) == b) {
        e[(2 * a + t) * dim + (2 * b + t)] = {s, 0.0};
        e[(2 * b + t) * dim + (2 * b + t)] = {-s, 0.0};
      } else {
        e[(2 * r + t) * dim + (2 * r + t)] = {1.0, 0.0};
      }
  return Unitary(dim, std::move(e));
}

// I (x) (H X): sends the target |0> to |-> for phase kickback.
inline Unitary target_minus_operator(int m) {
  int dim = 2 << m;
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<std::complex<double>> e(size_t(dim) * dim, {0.0, 0.0});
  for (int r = 0; r < (1 << m); ++r) {
    e[(2 * r + 0) * dim + (2 * r + 0)] = {s, 0.0};
    e[(2 * r + 0) * dim + (2 * r + 1)] = {s, 0.0};
    e[(2 * r + 1) * dim + (2 * r + 0)] = {-s, 0.0};
    e[(2 * r + 1) * dim + (2 * r + 1)] = {s, 0.0};
  }
  return Unitary(dim, std::move(e));
}

}  // namespace detail

struct QueryOutcome {
  int bit = 0;
  double deviation = 0.0;  // |1 - P(outcome)| plus any off-support mass
};

// Simulate one oracle query for a single tree node against input point x.
inline QueryOutcome run_single_query(const ParityQuery& q, int n, uint32_t x) {
  if (q.i < 1 || q.i > n || (q.is_pair() && (q.j < 1 || q.j > n)))
    throw std::invalid_argument("query index out of range");
  if (q.is_pair() && q.i == q.j)
    throw std::invalid_argument("pair query needs distinct indices");
  int m = detail::reg_width(n);
  Unitary oracle = detail::oracle_operator(n, m, x);

  if (!q.is_pair()) {
    QueryState s = QueryState::basis(m, uint32_t(q.i - 1), 0);
    oracle.apply(s);
    s.query_count++;
    // Measure the target qubit; all amplitude must sit on row i-1.
    double p[2] = {0.0, 0.0};
    double off = 0.0;
    for (int r = 0; r < (1 << m); ++r)
      for (int t = 0; t < 2; ++t) {
        double pr = std::norm(s.amp[2 * r + t]);
        if (uint32_t(r) == uint32_t(q.i - 1)) p[t] += pr;
        else off += pr;
      }
    int bit = p[1] > p[0] ? 1 : 0;
    return {bit, std::abs(1.0 - p[bit]) + off};
  }

  uint32_t a = uint32_t(q.i - 1), b = uint32_t(q.j - 1);
  Unitary rot = detail::interference_operator(m, a, b);
  Unitary minus = detail::target_minus_operator(m);
  QueryState s = QueryState::basis(m, a, 0);
  rot.apply(s);    // (|a> + |b>)/sqrt2 (x) |0>
  minus.apply(s);  // target to |->
  oracle.apply(s); // phase kickback
  s.query_count++;
  rot.apply(s);    // interfere: equal bits -> |a>, unequal -> |b>
  // Measure the index register: a => 0, b => 1.
  double pa = 0, pb = 0, off = 0;
  for (int r = 0; r < (1 << m); ++r)
    for (int t = 0; t < 2; ++t) {
      double pr = std::norm(s.amp[2 * r + t]);
      if (uint32_t(r) == a) pa += pr;
      else if (uint32_t(r) == b) pb += pr;
      else off += pr;
    }
  int bit = pb > pa ? 1 : 0;
  return {bit, std::abs(1.0 - (bit ? pb : pa)) + off};
}

struct InputTranscript {
  uint32_t input = 0;
  int output = 0;
  int queries = 0;
  double deviation = 0.0;
};

struct RunReport {
  bool pass = false;
  int n = 0;
  int max_queries = 0;
  double max_deviation = 0.0;
  std::vector<InputTranscript> transcripts;
  std::vector<uint32_t> mismatches;  // inputs whose output != reference
};

// Walk the tree on every input, executing one simulated query per node
// (fresh state each time), and compare outputs against the reference f.
inline RunReport run_ptree_algorithm(const ParityDecisionTree& t,
                                     const TruthTable& f) {
  if (f.n() > 12)
    throw cap_error("simulation capped at 12 variables");
  if (t.max_var() > f.n())
    throw std::invalid_argument("tree queries a variable beyond n");
  RunReport rep;
  rep.n = f.n();
  rep.transcripts.reserve(f.size());
  for (uint32_t x = 0; x < f.size(); ++x) {
    const ParityDecisionTree::Node* node = t.root.get();
    int queries = 0;
    double dev = 0.0;
    while (!node->is_leaf) {
      QueryOutcome out = run_single_query(node->q, f.n(), x);
      ++queries;
      dev = std::max(dev, out.deviation);
      node = out.bit ? node->child1.get() : node->child0.get();
    }
    rep.transcripts.push_back({x, node->value, queries, dev});
    rep.max_queries = std::max(rep.max_queries, queries);
    rep.max_deviation = std::max(rep.max_deviation, dev);
    if (node->value != int(f.get(x))) rep.mismatches.push_back(x);
  }
  rep.pass = rep.mismatches.empty() && rep.max_deviation <= kOutcomeTol;
  return rep;
}

inline nlohmann::json run_report_to_json(const RunReport& r) {
  nlohmann::json transcripts = nlohmann::json::array();
  for (auto& t : r.transcripts)
    transcripts.push_back({{"input", t.input},
                           {"output", t.output},
                           {"queries", t.queries},
                           {"deviation", t.deviation}});
  return {{"pass", r.pass},
          {"n", r.n},
          {"maxQueries", r.max_queries},
          {"maxDeviation", r.max_deviation},
          {"mismatches", r.mismatches},
          {"transcripts", transcripts}};
}

}  // namespace qsep
