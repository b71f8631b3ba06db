// SPDX-License-Identifier: Apache-2.0
//
// Wire format. Problems come in as JSON objects
//
//   { "cone":  { "rays": [[1,0],[1,2]] },
//     "roots": [ {"ray": 1, "e": [-1,1]}, ... ] }
//
// with 1-based ray indices. Integers may be given as JSON numbers or as
// decimal strings (for values beyond 64 bits). All emitters use ordered
// JSON objects and sorted containers, so output is byte-stable for a given
// input and option set.

#pragma once

#include "toric_alt/alternative.hpp"

#include <json.hpp>

#include <fstream>
#include <limits>
#include <string>
#include <vector>

namespace toric_alt {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Parsing.
// ---------------------------------------------------------------------------

inline Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.empty()) throw input_error("empty integer string");
    std::size_t at = s[0] == '-' || s[0] == '+' ? 1 : 0;
    if (at == s.size()) throw input_error("bad integer string: " + s);
    for (; at < s.size(); ++at)
      if (s[at] < '0' || s[at] > '9')
        throw input_error("bad integer string: " + s);
    return Int(s);
  }
  throw input_error("expected an integer (number or decimal string)");
}

inline IVec ivec_from_json(const Json& j) {
  if (!j.is_array()) throw input_error("expected an array of integers");
  IVec v;
  v.reserve(j.size());
  for (const Json& x : j) v.push_back(int_from_json(x));
  return v;
}

inline Cone cone_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rays"))
    throw input_error("cone: expected an object with a \"rays\" array");
  const Json& rays = j.at("rays");
  if (!rays.is_array() || rays.empty())
    throw input_error("cone: \"rays\" must be a nonempty array");
  Cone cone;
  for (const Json& r : rays) cone.rays.push_back(ivec_from_json(r));
  cone.rank = static_cast<int>(cone.rays[0].size());
  if (j.contains("rank") && int_from_json(j.at("rank")) != cone.rank)
    throw input_error("cone: \"rank\" disagrees with ray length");
  for (const IVec& r : cone.rays)
    if (r.size() != cone.rays[0].size())
      throw input_error("cone: rays of unequal length");
  return cone;
}

struct Problem {
  Cone cone;
  std::vector<std::vector<IVec>> roots;  // grouped by ray
};

inline Problem problem_from_json(const Json& j) {
  if (!j.is_object()) throw input_error("problem: expected a JSON object");
  if (!j.contains("cone")) throw input_error("problem: missing \"cone\"");
  Problem p;
  p.cone = cone_from_json(j.at("cone"));
  p.roots.assign(p.cone.num_rays(), {});
  if (j.contains("roots")) {
    const Json& roots = j.at("roots");
    if (!roots.is_array()) throw input_error("problem: \"roots\" must be an array");
    for (const Json& r : roots) {
      if (!r.is_object() || !r.contains("ray") || !r.contains("e"))
        throw input_error("problem: each root needs \"ray\" and \"e\"");
      Int ray = int_from_json(r.at("ray"));
      if (ray < 1 || ray > Int(p.cone.num_rays()))
        throw input_error("problem: root ray index out of range");
      std::size_t idx = ray.convert_to<std::size_t>() - 1;
      IVec e = ivec_from_json(r.at("e"));
      if (e.size() != static_cast<std::size_t>(p.cone.rank))
        throw input_error("problem: root length does not match cone rank");
      p.roots[idx].push_back(std::move(e));
    }
  }
  return p;
}

inline Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw input_error(std::string("JSON parse error: ") + e.what());
  }
  return problem_from_json(j);
}

// ---------------------------------------------------------------------------
// Emitting.
// ---------------------------------------------------------------------------

inline Json int_to_json(const Int& v) {
  static const Int lo = Int(std::numeric_limits<long long>::min());
  static const Int hi = Int(std::numeric_limits<long long>::max());
  if (v >= lo && v <= hi) return Json(v.convert_to<long long>());
  return Json(v.str());
}

inline Json ivec_to_json(const IVec& v) {
  Json a = Json::array();
  for (const Int& x : v) a.push_back(int_to_json(x));
  return a;
}

inline Json cone_to_json(const Cone& cone) {
  Json j = Json::object();
  j["rank"] = cone.rank;
  Json rays = Json::array();
  for (const IVec& r : cone.rays) rays.push_back(ivec_to_json(r));
  j["rays"] = rays;
  return j;
}

inline Json validation_to_json(const ValidationReport& rep) {
  Json j = Json::object();
  j["ok"] = rep.ok;
  Json checks = Json::array();
  for (const ConeCheck& c : rep.checks) {
    Json e = Json::object();
    e["name"] = c.name;
    e["pass"] = c.pass;
    if (!c.detail.empty()) e["detail"] = c.detail;
    checks.push_back(e);
  }
  j["checks"] = checks;
  return j;
}

inline Json root_key_to_json(const RootKey& rk) {
  Json j = Json::object();
  j["ray"] = rk.ray + 1;
  j["e"] = ivec_to_json(rk.e);
  return j;
}

inline Json root_groups_to_json(const std::vector<std::vector<IVec>>& groups) {
  Json a = Json::array();
  for (std::size_t i = 0; i < groups.size(); ++i) {
    Json g = Json::object();
    g["ray"] = i + 1;
    Json es = Json::array();
    for (const IVec& e : groups[i]) es.push_back(ivec_to_json(e));
    g["roots"] = es;
    a.push_back(g);
  }
  return a;
}

inline Json closure_to_json(const ClosureResult& cl) {
  Json j = Json::object();
  j["added"] = cl.added;
  j["total"] = cl.total_roots();
  Json sets = Json::array();
  for (std::size_t i = 0; i < cl.sets.size(); ++i) {
    Json g = Json::object();
    g["ray"] = i + 1;
    Json es = Json::array();
    for (const IVec& e : cl.sets[i]) es.push_back(ivec_to_json(e));
    g["roots"] = es;
    sets.push_back(g);
  }
  j["sets"] = sets;
  return j;
}

inline Json poly_to_json(const SparsePoly& p) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) {
    Json t = Json::object();
    t["coeff"] = rat_to_string(c);
    t["exps"] = ivec_to_json(m);
    terms.push_back(t);
  }
  Json j = Json::object();
  j["poly"] = p.to_string();
  j["terms"] = terms;
  return j;
}

inline Json automorphism_to_json(const PolyAutomorphism& a) {
  Json images = Json::array();
  for (const SparsePoly& p : a.images) images.push_back(poly_to_json(p));
  Json j = Json::object();
  j["images"] = images;
  return j;
}

inline Json unipotent_to_json(const UnipotentCertificate& cert) {
  Json j = Json::object();
  j["algebra_dim"] = cert.algebra_dim;
  Json edges = Json::array();
  for (std::size_t v = 0; v < cert.graph.size(); ++v)
    for (std::size_t w : cert.graph[v]) {
      Json e = Json::array();
      e.push_back(v + 1);
      e.push_back(w + 1);
      edges.push_back(e);
    }
  j["graph_edges"] = edges;
  Json order = Json::array();
  for (std::size_t v : cert.order) order.push_back(v + 1);
  j["sink_order"] = order;
  j["lcs_dims"] = cert.lcs.dims;
  j["nilpotency_class"] = cert.lcs.nilpotency_class;
  j["group_law_samples"] = cert.group_law_samples;
  return j;
}

inline Json witness_to_json(const FreeWitness& w) {
  Json j = Json::object();
  j["first"] = root_key_to_json(w.first);
  j["second"] = root_key_to_json(w.second);
  j["c"] = int_to_json(w.c);
  j["d"] = int_to_json(w.d);
  j["class"] = to_string(w.pair_class);
  j["parameter"] = int_to_json(w.parameter);
  Json of = Json::array();
  for (const RootKey& rk : w.origin_first) of.push_back(root_key_to_json(rk));
  j["origin_first"] = of;
  Json os = Json::array();
  for (const RootKey& rk : w.origin_second) os.push_back(root_key_to_json(rk));
  j["origin_second"] = os;
  j["gen1"] = automorphism_to_json(w.gen1);
  j["gen2"] = automorphism_to_json(w.gen2);
  Json v = Json::object();
  v["words_checked"] = w.words_checked;
  v["max_word_len"] = w.max_word_len;
  v["point_returns"] = w.point_returns;
  v["symbolic_checked"] = w.symbolic_checked;
  v["certificate"] = w.certificate;
  j["verification"] = v;
  return j;
}

inline Json decision_to_json(const Decision& dec) {
  Json j = Json::object();
  j["verdict"] = dec.is_unipotent() ? "unipotent" : "free";
  j["closure"] = closure_to_json(dec.closure);
  if (dec.unipotent) j["certificate"] = unipotent_to_json(*dec.unipotent);
  if (dec.witness) j["witness"] = witness_to_json(*dec.witness);
  return j;
}

/// Interaction graph in DOT form; vertex labels carry the closed root set
/// sizes so the rendering shows the dimension at each ray.
inline std::string graph_to_dot(const std::vector<std::set<std::size_t>>& graph,
                                const std::vector<std::size_t>& dims) {
  std::string s = "digraph interaction {\n";
  for (std::size_t v = 0; v < graph.size(); ++v) {
    s += "  n" + std::to_string(v + 1) + " [label=\"L" + std::to_string(v + 1) +
         " (dim=" + std::to_string(v < dims.size() ? dims[v] : 0) + ")\"];\n";
  }
  for (std::size_t v = 0; v < graph.size(); ++v)
    for (std::size_t w : graph[v])
      s += "  n" + std::to_string(v + 1) + " -> n" + std::to_string(w + 1) +
           ";\n";
  s += "}\n";
  return s;
}

}  // namespace toric_alt
