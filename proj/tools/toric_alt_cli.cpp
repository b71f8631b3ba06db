// SPDX-License-Identifier: Apache-2.0
//
// Command line front end. Subcommands:
//
//   validate  check the cone of a problem file and report each test
//   decide    run the full alternative: unipotent certificate or free pair
//   roots     enumerate all roots within a coordinate bound
//   exp       exponentiate one root derivation at a rational time
//   graph     print the ray interaction graph of a unipotent family
//
// Exit codes: 0 on success, 2 for bad input (including an invalid cone and
// a tripped closure cap), 3 for an internal consistency failure.

#include <toric_alt/json_io.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <string>

namespace {

using namespace toric_alt;

std::string format_root_list(const std::vector<IVec>& es) {
  std::string s;
  for (const IVec& e : es) {
    if (!s.empty()) s += ", ";
    s += "(";
    for (std::size_t t = 0; t < e.size(); ++t) {
      if (t) s += ",";
      s += e[t].str();
    }
    s += ")";
  }
  return s;
}

std::string format_key(const RootKey& rk) {
  return "ray " + std::to_string(rk.ray + 1) + " e=" + format_root_list({rk.e});
}

int run_validate(const std::string& path, bool as_json, bool all_violations) {
  Problem p = load_problem(path);
  ValidationReport rep = validate_cone(p.cone);
  if (as_json) {
    std::cout << validation_to_json(rep).dump(2) << "\n";
  } else {
    bool stop = false;
    for (const ConeCheck& c : rep.checks) {
      if (stop) break;
      std::cout << c.name << ": " << (c.pass ? "ok" : "FAIL") ;
      if (!c.pass && !c.detail.empty()) std::cout << " (" << c.detail << ")";
      std::cout << "\n";
      if (!c.pass && !all_violations) stop = true;
    }
    std::cout << (rep.ok ? "cone is valid\n" : "cone is invalid\n");
  }
  return rep.ok ? 0 : 2;
}

int run_decide(const std::string& path, bool as_json, const DecideOptions& opt) {
  Problem p = load_problem(path);
  Decision dec = decide(p.cone, p.roots, opt);
  if (as_json) {
    std::cout << decision_to_json(dec).dump(2) << "\n";
    return 0;
  }
  if (dec.is_unipotent()) {
    const UnipotentCertificate& cert = *dec.unipotent;
    std::cout << "verdict: unipotent\n";
    std::cout << "roots after closure: " << dec.closure.total_roots() << " ("
              << dec.closure.added << " added)\n";
    std::cout << "sink order:";
    for (std::size_t v : cert.order) std::cout << " L" << v + 1;
    std::cout << "\nlower central series dims:";
    for (std::size_t d : cert.lcs.dims) std::cout << " " << d;
    std::cout << "\nnilpotency class: " << cert.lcs.nilpotency_class << "\n";
    std::cout << "group law samples verified: " << cert.group_law_samples
              << "\n";
  } else {
    const FreeWitness& w = *dec.witness;
    std::cout << "verdict: free subgroup of rank two\n";
    std::cout << "obstructing pair: " << format_key(w.first) << " / "
              << format_key(w.second) << "\n";
    std::cout << "pairings: c=" << w.c.str() << " d=" << w.d.str() << " ["
              << to_string(w.pair_class) << "]\n";
    std::cout << "parameter: " << w.parameter.str() << "\n";
    std::cout << "words checked: " << w.words_checked << " (max length "
              << w.max_word_len << ", " << w.symbolic_checked
              << " symbolically)\n";
    std::cout << "certificate: " << w.certificate << "\n";
  }
  return 0;
}

int run_roots(const std::string& path, const Int& bound, bool as_json) {
  Problem p = load_problem(path);
  ValidationReport rep = validate_cone(p.cone);
  if (!rep.ok) throw input_error("invalid cone; run validate for details");
  auto groups = enumerate_roots(p.cone, bound);
  if (as_json) {
    std::cout << root_groups_to_json(groups).dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < groups.size(); ++i)
      std::cout << "ray " << i + 1 << ": " << groups[i].size() << " root(s) "
                << format_root_list(groups[i]) << "\n";
  }
  return 0;
}

int run_exp(const std::string& path, std::size_t ray1, const std::string& root,
            const std::string& time, bool as_json) {
  Problem p = load_problem(path);
  ValidationReport rep = validate_cone(p.cone);
  if (!rep.ok) throw input_error("invalid cone; run validate for details");
  if (ray1 < 1 || ray1 > p.cone.num_rays())
    throw input_error("--ray out of range");
  IVec e;
  std::string cur;
  for (char ch : root + ",") {
    if (ch == ',') {
      if (cur.empty()) throw input_error("--root: empty coordinate");
      try {
        e.push_back(Int(cur));
      } catch (...) {
        throw input_error("--root: bad integer " + cur);
      }
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (e.size() != static_cast<std::size_t>(p.cone.rank))
    throw input_error("--root length does not match cone rank");
  Rat t = rat_from_string(time);
  if (!is_root_at(p.cone, ray1 - 1, e))
    throw input_error("--root is not a root at --ray");
  MonomialField mf = lift_derivation(p.cone, ray1 - 1, e);
  PolyField f = zero_field(p.cone.num_rays());
  f[mf.var] = SparsePoly::monomial(p.cone.num_rays(), t * Rat(mf.coeff),
                                   mf.exponents);
  PolyAutomorphism a = exp_field(f);
  if (as_json) {
    std::cout << automorphism_to_json(a).dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < a.images.size(); ++i)
      std::cout << "x" << i + 1 << " -> " << a.images[i].to_string() << "\n";
  }
  return 0;
}

int run_graph(const std::string& path, bool as_json, bool as_dot,
              std::size_t cap) {
  Problem p = load_problem(path);
  ValidationReport rep = validate_cone(p.cone);
  if (!rep.ok) throw input_error("invalid cone; run validate for details");
  ClosureResult cl = close_roots(p.cone, p.roots, cap);
  if (!cl.is_unipotent())
    throw input_error(
        "the family contains an obstructing pair; no interaction graph "
        "(run decide for the free pair)");
  auto graph = build_graph(cl);
  auto order = sink_order(graph);
  std::vector<std::size_t> dims;
  for (const auto& s : cl.sets) dims.push_back(s.size());
  if (as_dot) {
    std::cout << graph_to_dot(graph, dims);
  } else if (as_json) {
    Json j = Json::object();
    Json edges = Json::array();
    for (std::size_t v = 0; v < graph.size(); ++v)
      for (std::size_t w : graph[v]) {
        Json e = Json::array();
        e.push_back(v + 1);
        e.push_back(w + 1);
        edges.push_back(e);
      }
    j["edges"] = edges;
    Json ord = Json::array();
    for (std::size_t v : order) ord.push_back(v + 1);
    j["sink_order"] = ord;
    j["dims"] = dims;
    std::cout << j.dump(2) << "\n";
  } else {
    for (std::size_t v = 0; v < graph.size(); ++v)
      for (std::size_t w : graph[v])
        std::cout << "L" << v + 1 << " -> L" << w + 1 << "\n";
    std::cout << "sink order:";
    for (std::size_t v : order) std::cout << " L" << v + 1;
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"alternative for groups generated by root subgroups on toric "
               "affine varieties: unipotent certificate or free pair"};
  app.require_subcommand(1);

  std::string path;
  bool as_json = false;
  bool all_violations = false;
  bool as_dot = false;
  std::string bound_str = "3";
  std::size_t ray1 = 1;
  std::string root_csv;
  std::string time_str = "1";
  DecideOptions opt;

  CLI::App* validate = app.add_subcommand("validate", "check the cone");
  validate->add_option("problem", path, "problem JSON file")->required();
  validate->add_flag("--json", as_json, "emit JSON");
  validate->add_flag("--all-violations", all_violations,
                     "report every failing check, not just the first");

  CLI::App* decide_cmd = app.add_subcommand("decide", "run the alternative");
  decide_cmd->add_option("problem", path, "problem JSON file")->required();
  decide_cmd->add_flag("--json", as_json, "emit JSON");
  decide_cmd->add_option("--cap", opt.cap,
                         "closure size cap (0: 10000 or TORIC_ALT_CAP)");
  decide_cmd->add_option("--max-word-len", opt.max_word_len,
                         "free pair: reduced word check bound (0 skips)");
  decide_cmd->add_option("--group-law-samples", opt.group_law_samples,
                         "unipotent: number of sampled group law checks");
  decide_cmd->add_option("--seed", opt.seed, "sampling seed");

  CLI::App* roots_cmd = app.add_subcommand("roots", "enumerate roots");
  roots_cmd->add_option("problem", path, "problem JSON file")->required();
  roots_cmd->add_option("--bound", bound_str, "coordinate bound (default 3)");
  roots_cmd->add_flag("--json", as_json, "emit JSON");

  CLI::App* exp_cmd =
      app.add_subcommand("exp", "exponentiate one root derivation");
  exp_cmd->add_option("problem", path, "problem JSON file")->required();
  exp_cmd->add_option("--ray", ray1, "1-based ray index")->required();
  exp_cmd->add_option("--root", root_csv, "root, comma separated")->required();
  exp_cmd->add_option("--time", time_str, "rational time (default 1)");
  exp_cmd->add_flag("--json", as_json, "emit JSON");

  CLI::App* graph_cmd =
      app.add_subcommand("graph", "interaction graph of a unipotent family");
  graph_cmd->add_option("problem", path, "problem JSON file")->required();
  graph_cmd->add_flag("--json", as_json, "emit JSON");
  graph_cmd->add_flag("--dot", as_dot, "emit DOT");
  graph_cmd->add_option("--cap", opt.cap,
                        "closure size cap (0: 10000 or TORIC_ALT_CAP)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate) return run_validate(path, as_json, all_violations);
    if (*decide_cmd) return run_decide(path, as_json, opt);
    if (*roots_cmd) {
      Int bound;
      try {
        bound = Int(bound_str);
      } catch (...) {
        throw toric_alt::input_error("--bound: bad integer");
      }
      return run_roots(path, bound, as_json);
    }
    if (*exp_cmd) return run_exp(path, ray1, root_csv, time_str, as_json);
    if (*graph_cmd) return run_graph(path, as_json, as_dot, opt.cap);
  } catch (const toric_alt::input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const toric_alt::internal_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
