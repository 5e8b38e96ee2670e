// qsep: query-complexity workbench for Boolean functions.
//
// Subcommands: analyze, construct, optimal-depth, parity-depth, reduce, mm,
// qsim, verify-paper.  All machine output is JSON on stdout (indent with
// --pretty); errors go to stderr as one JSON record.  Exit codes: 0 success,
// 1 verification failure, 2 usage error, 3 cap exceeded.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qsep/qsep.hpp"

namespace {

struct PrettyFlag {
  bool pretty = false;
  int indent() const { return pretty ? 2 : -1; }
};

void emit(const nlohmann::json& j, const PrettyFlag& pf) {
  std::cout << j.dump(pf.indent()) << "\n";
}

qsep::TruthTable load_function(const std::string& fn_path,
                               const std::string& anf_text) {
  if (!fn_path.empty()) return qsep::parse_function_file(fn_path);
  return qsep::parse_function_text(anf_text);
}

// ---- analyze ----

int cmd_analyze(const std::string& fn_path, const std::string& anf_text,
                int max_n, int max_parity_n, const PrettyFlag& pf) {
  qsep::TruthTable f = load_function(fn_path, anf_text);
  nlohmann::json out;
  out["n"] = f.n();
  out["degree"] = qsep::algebraic_degree(f);
  out["influencing"] = qsep::influencing_count(f);
  out["influencingVariables"] = qsep::influencing_variables(f);
  if (f.n() <= 16) out["realDegree"] = qsep::real_degree(f);
  if (f.n() <= 20) out["nonlinearity"] = qsep::nonlinearity(f);

  qsep::QeBoundsOptions opts;
  opts.max_depth_n = max_n;
  opts.max_parity_n = max_parity_n;
  if (f.n() <= max_n) {
    qsep::DepthOptions dopts;
    dopts.max_n = max_n;
    out["D"] = qsep::optimal_depth(f, dopts);
  }
  if (f.n() <= max_parity_n) {
    qsep::ParityDepthOptions popts;
    popts.max_n = max_parity_n;
    out["parityDepth"] = qsep::optimal_parity_depth(f, popts);
  }
  out["qeBounds"] = qsep::qe_bounds_to_json(qsep::qe_bounds(f, opts));
  if (f.n() <= max_n) {
    qsep::QfClassification c = qsep::classify_query_friendly(f, opts);
    out["qfClassification"] = {
        {"isQF", c.is_qf},
        {"separability", qsep::to_string(c.separability)},
        {"depth", c.depth},
        {"dqFloor", c.dq_floor}};
  }
  emit(out, pf);
  return 0;
}

// ---- construct ----

int cmd_construct(const std::string& family, int k, int n,
                  const std::string& g_path, const std::string& h_path,
                  const std::string& tree_out, const std::string& tt_out,
                  const std::string& anf_out, const PrettyFlag& pf) {
  nlohmann::json out;
  out["family"] = family;
  std::optional<qsep::TruthTable> table;
  nlohmann::json tree_json;  // null unless a tree exists

  if (family == "selector") {
    if (g_path.empty() || h_path.empty())
      throw std::invalid_argument(
          "selector needs --g-file and --h-file function files");
    qsep::TruthTable g = qsep::parse_function_file(g_path);
    qsep::TruthTable h = qsep::parse_function_file(h_path);
    table = qsep::selector_combine(g, h);
    out["n"] = table->n();
  } else {
    qsep::FamilySpec spec;
    if (family == "full-tree") {
      spec.family = qsep::Family::full_tree;
      spec.param = k;
    } else if (family == "fn1") {
      spec.family = qsep::Family::fn1;
      spec.param = n;
    } else if (family == "fn2") {
      spec.family = qsep::Family::fn2;
      spec.param = n;
    } else if (family == "parity-complete") {
      spec.family = qsep::Family::parity_complete;
      spec.param = k;
    } else if (family == "separable") {
      spec.family = qsep::Family::separable;
      spec.param = n;
    } else {
      throw std::invalid_argument(
          "unknown family \"" + family +
          "\" (full-tree, fn1, fn2, parity-complete, separable, selector)");
    }
    if (spec.param <= 0)
      throw std::invalid_argument(
          "missing or non-positive family parameter (--k or --n)");
    qsep::BuiltFamily built = qsep::build_family(spec);
    out["param"] = spec.param;
    out["n"] = built.n;
    if (built.tree) tree_json = qsep::tree_to_json(*built.tree);
    if (built.ptree) tree_json = qsep::ptree_to_json(*built.ptree);
    table = built.table;
  }

  out["tree"] = tree_json;
  if (table) {
    qsep::Anf anf = qsep::anf_from_tt(*table);
    out["anf"] = qsep::anf_to_text(anf);
    out["tt"] = {{"n", table->n()}, {"hex", table->to_hex()}};
  } else {
    out["anf"] = nullptr;
    out["tt"] = nullptr;
  }

  if (!tree_out.empty()) {
    if (tree_json.is_null())
      throw std::invalid_argument("this construction has no tree to write");
    qsep::write_text_file(tree_out, tree_json.dump(2) + "\n");
  }
  if (!tt_out.empty()) {
    if (!table) throw qsep::cap_error("table not materialized at this size");
    qsep::write_text_file(tt_out, qsep::format_tt_text(*table));
  }
  if (!anf_out.empty()) {
    if (!table) throw qsep::cap_error("table not materialized at this size");
    qsep::write_text_file(anf_out,
                          qsep::anf_to_text(qsep::anf_from_tt(*table)) + "\n");
  }
  emit(out, pf);
  return 0;
}

// ---- optimal-depth / parity-depth ----

int cmd_optimal_depth(const std::string& fn_path, const std::string& anf_text,
                      int max_n, bool witness, const PrettyFlag& pf) {
  qsep::TruthTable f = load_function(fn_path, anf_text);
  qsep::DepthOptions opts;
  opts.max_n = max_n;
  nlohmann::json out;
  if (witness) {
    auto [d, tree] = qsep::optimal_depth_witness(f, opts);
    out["depth"] = d;
    out["tree"] = qsep::tree_to_json(tree);
  } else {
    out["depth"] = qsep::optimal_depth(f, opts);
  }
  emit(out, pf);
  return 0;
}

int cmd_parity_depth(const std::string& fn_path, const std::string& anf_text,
                     int max_n, bool witness, const PrettyFlag& pf) {
  qsep::TruthTable f = load_function(fn_path, anf_text);
  qsep::ParityDepthOptions opts;
  opts.max_n = max_n;
  nlohmann::json out;
  if (witness) {
    auto [d, tree] = qsep::optimal_parity_depth_witness(f, opts);
    out["parityDepth"] = d;
    out["tree"] = qsep::ptree_to_json(tree);
  } else {
    out["parityDepth"] = qsep::optimal_parity_depth(f, opts);
  }
  emit(out, pf);
  return 0;
}

// ---- reduce ----

int cmd_reduce(const std::string& fn_path, const std::string& anf_text,
               const std::string& tree_path, int k, const PrettyFlag& pf) {
  if (!tree_path.empty()) {
    nlohmann::json tj = nlohmann::json::parse(qsep::read_text_file(tree_path));
    qsep::DecisionTree t = qsep::tree_from_json(tj);
    qsep::ReductionCertificate cert = qsep::reduction_from_tree(t);
    qsep::TruthTable f = qsep::tree_function(t, t.max_var());
    nlohmann::json out = qsep::reduction_to_json(cert);
    out["verified"] = qsep::verify_reduction(f, cert);
    emit(out, pf);
    return out["verified"].get<bool>() ? 0 : 1;
  }
  qsep::TruthTable f = load_function(fn_path, anf_text);
  if (k < 1) throw std::invalid_argument("reduce needs --k >= 1");
  std::optional<qsep::ReductionCertificate> cert =
      qsep::find_and_reduction(f, k);
  if (!cert) {
    emit({{"found", false}, {"k", k}}, pf);
    return 1;
  }
  nlohmann::json out = qsep::reduction_to_json(*cert);
  out["found"] = true;
  out["verified"] = qsep::verify_reduction(f, *cert);
  emit(out, pf);
  return out["verified"].get<bool>() ? 0 : 1;
}

// ---- mm ----

int cmd_mm(int n, uint64_t seed, bool have_seed, const std::string& spec_path,
           const PrettyFlag& pf) {
  qsep::MMBentSpec spec;
  if (!spec_path.empty()) {
    spec = qsep::mm_from_json(
        nlohmann::json::parse(qsep::read_text_file(spec_path)));
  } else if (n > 0 && have_seed) {
    spec = qsep::random_mm(n, seed);
  } else if (n > 0) {
    spec = qsep::mm_identity_spec(n);
  } else {
    throw std::invalid_argument("mm needs --spec FILE or --n N [--seed S]");
  }
  qsep::TruthTable f = qsep::mm_build(spec);
  qsep::DecisionTree ct = qsep::mm_classical_tree(spec);
  qsep::ParityDecisionTree pt = qsep::mm_parity_tree(spec);
  nlohmann::json out;
  out["spec"] = qsep::mm_to_json(spec);
  out["bent"] = qsep::is_bent(f);
  out["nonlinearity"] = qsep::nonlinearity(f);
  out["realDegree"] = qsep::real_degree(f);
  out["tt"] = {{"n", f.n()}, {"hex", f.to_hex()}};
  out["classicalTree"] = qsep::tree_to_json(ct);
  out["classicalDepth"] = ct.depth();
  out["parityTree"] = qsep::ptree_to_json(pt);
  out["parityDepth"] = pt.depth();
  out["treesAgree"] = qsep::tree_function(ct, f.n()) == f &&
                      qsep::ptree_function(pt, f.n()) == f;
  emit(out, pf);
  return out["bent"].get<bool>() && out["treesAgree"].get<bool>() ? 0 : 1;
}

// ---- qsim ----

int cmd_qsim(const std::string& tree_path, const std::string& fn_path,
             const std::string& anf_text, const PrettyFlag& pf) {
  nlohmann::json tj = nlohmann::json::parse(qsep::read_text_file(tree_path));
  qsep::ParityDecisionTree t = qsep::ptree_from_json(tj);
  qsep::TruthTable f = load_function(fn_path, anf_text);
  qsep::RunReport rep = qsep::run_ptree_algorithm(t, f);
  emit(qsep::run_report_to_json(rep), pf);
  return rep.pass ? 0 : 1;
}

// ---- verify-paper ----

int cmd_verify_paper(const std::string& suite, bool as_json,
                     const char* argv0, const PrettyFlag& pf) {
  qsep::VerifyOptions opts;
  std::error_code ec;
  std::filesystem::path self =
      std::filesystem::read_symlink("/proc/self/exe", ec);
  opts.cli_path = ec ? std::string(argv0) : self.string();
  std::vector<int> only;
  if (suite != "all") {
    std::string digits = suite;
    if (!digits.empty() && (digits[0] == 'c' || digits[0] == 'C'))
      digits.erase(0, 1);
    int id = 0;
    try {
      id = std::stoi(digits);
    } catch (...) {
      throw std::invalid_argument("--suite takes \"all\" or a criterion id 1-9");
    }
    if (id < 1 || id > 9)
      throw std::invalid_argument("--suite takes \"all\" or a criterion id 1-9");
    only.push_back(id);
  }
  std::vector<qsep::CriterionResult> results =
      qsep::run_acceptance_suite(opts, only);
  bool pass;
  if (as_json) {
    emit(qsep::acceptance_results_to_json(results), pf);
    pass = !results.empty();
    for (const auto& r : results) pass = pass && r.pass;
  } else {
    pass = qsep::print_acceptance_results(std::cout, results);
  }
  return pass ? 0 : 1;
}

nlohmann::json error_record(const char* kind, const std::string& message) {
  return {{"error", kind}, {"message", message}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boolean function query-complexity workbench"};
  app.require_subcommand(1);
  PrettyFlag pf;
  app.add_flag("--pretty", pf.pretty, "indent JSON output");

  std::string fn_path, anf_text, tree_path, g_path, h_path, spec_path;
  std::string tree_out, tt_out, anf_out;
  std::string family, suite = "all";
  int max_n = 6, max_parity_n = 5, k = 0, n = 0;
  uint64_t seed = 0;
  bool witness = false, as_json = false;

  auto* analyze = app.add_subcommand("analyze", "invariants and bounds");
  analyze->add_option("--fn", fn_path, "function file (tt or ANF)");
  analyze->add_option("--anf", anf_text, "inline ANF text");
  analyze->add_option("--max-n", max_n, "deterministic-depth cap");
  analyze->add_option("--max-parity-n", max_parity_n, "parity-depth cap");

  auto* construct = app.add_subcommand("construct", "build a family function");
  construct->add_option("family", family,
                        "full-tree|fn1|fn2|parity-complete|separable|selector")
      ->required();
  construct->add_option("--k", k, "depth parameter");
  construct->add_option("--n", n, "variable count");
  construct->add_option("--g-file", g_path,
                        "selector: function chosen when the selector bit is 1");
  construct->add_option("--h-file", h_path,
                        "selector: function chosen when the selector bit is 0");
  construct->add_option("--tree-out", tree_out, "write tree JSON here");
  construct->add_option("--tt-out", tt_out, "write truth-table file here");
  construct->add_option("--anf-out", anf_out, "write ANF text here");

  auto* odepth = app.add_subcommand("optimal-depth",
                                    "minimum deterministic tree depth");
  odepth->add_option("--fn", fn_path, "function file");
  odepth->add_option("--anf", anf_text, "inline ANF text");
  odepth->add_option("--max-n", max_n, "search cap");
  odepth->add_flag("--witness", witness, "emit an optimal tree");

  auto* pdepth = app.add_subcommand("parity-depth",
                                    "minimum parity tree depth");
  pdepth->add_option("--fn", fn_path, "function file");
  pdepth->add_option("--anf", anf_text, "inline ANF text");
  pdepth->add_option("--max-n", max_parity_n, "search cap");
  pdepth->add_flag("--witness", witness, "emit an optimal tree");

  auto* reduce = app.add_subcommand("reduce", "AND_k reduction certificates");
  reduce->add_option("--fn", fn_path, "function file");
  reduce->add_option("--anf", anf_text, "inline ANF text");
  reduce->add_option("--tree", tree_path, "extract from a tree JSON instead");
  reduce->add_option("--k", k, "reduction order");

  auto* mm = app.add_subcommand("mm", "Maiorana-McFarland constructions");
  auto* mm_n = mm->add_option("--n", n, "variable count (even)");
  auto* mm_seed = mm->add_option("--seed", seed, "random spec seed");
  mm->add_option("--spec", spec_path, "spec JSON file");
  mm_seed->needs(mm_n);

  auto* qsim = app.add_subcommand("qsim", "simulate a parity-tree algorithm");
  qsim->add_option("--tree", tree_path, "tree JSON file")->required();
  qsim->add_option("--fn", fn_path, "reference function file");
  qsim->add_option("--anf", anf_text, "inline reference ANF");

  auto* verify = app.add_subcommand("verify-paper", "run the acceptance suite");
  verify->add_option("--suite", suite, "all or a criterion id (1-9)");
  verify->add_flag("--json", as_json, "emit results as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << error_record("usage", e.what()).dump() << "\n";
    return 2;
  }

  try {
    if (*analyze) {
      if (fn_path.empty() && anf_text.empty())
        throw std::invalid_argument("analyze needs --fn or --anf");
      return cmd_analyze(fn_path, anf_text, max_n, max_parity_n, pf);
    }
    if (*construct)
      return cmd_construct(family, k, n, g_path, h_path, tree_out, tt_out,
                           anf_out, pf);
    if (*odepth) {
      if (fn_path.empty() && anf_text.empty())
        throw std::invalid_argument("optimal-depth needs --fn or --anf");
      return cmd_optimal_depth(fn_path, anf_text, max_n, witness, pf);
    }
    if (*pdepth) {
      if (fn_path.empty() && anf_text.empty())
        throw std::invalid_argument("parity-depth needs --fn or --anf");
      return cmd_parity_depth(fn_path, anf_text, max_parity_n, witness, pf);
    }
    if (*reduce) {
      if (tree_path.empty() && fn_path.empty() && anf_text.empty())
        throw std::invalid_argument("reduce needs --tree, --fn or --anf");
      return cmd_reduce(fn_path, anf_text, tree_path, k, pf);
    }
    if (*mm) return cmd_mm(n, seed, mm_seed->count() > 0, spec_path, pf);
    if (*qsim) {
      if (fn_path.empty() && anf_text.empty())
        throw std::invalid_argument("qsim needs --fn or --anf");
      return cmd_qsim(tree_path, fn_path, anf_text, pf);
    }
    if (*verify) return cmd_verify_paper(suite, as_json, argv[0], pf);
  } catch (const qsep::cap_error& e) {
    std::cerr << error_record("cap", e.what()).dump() << "\n";
    return 3;
  } catch (const qsep::parse_error& e) {
    std::cerr << error_record("parse", e.what()).dump() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << error_record("parse", e.what()).dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << error_record("usage", e.what()).dump() << "\n";
    return 2;
  }
  return 2;
}
