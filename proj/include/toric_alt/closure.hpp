// SPDX-License-Identifier: Apache-2.0
//
// Bracket closure of a family of root derivations.
//
// Starting from finitely many roots grouped by distinguished ray, the
// closure repeatedly inspects pairs (e at ray i, e' at ray j). With
// c = <ray_j, e> and d = <ray_i, e'> (both nonnegative for i != j):
//
//   c = d = 0   the derivations commute;
//   c > 0 = d   the bracket is -c times the root derivation of e+e' at i,
//               so e+e' joins the set at ray i;
//   d > 0 = c   symmetrically e+e' joins the set at ray j;
//   c, d > 0    the pair generates a free subgroup later on; closure stops
//               and reports the pair.
//
// When closure terminates without such a pair the resulting family spans a
// nilpotent Lie algebra; this header also derives its structure constants,
// the ray interaction graph with a sink elimination order, and the lower
// central series.

#pragma once

#include "toric_alt/derivations.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace toric_alt {

struct RootKey {
  std::size_t ray = 0;
  IVec e;

  bool operator==(const RootKey& o) const { return ray == o.ray && e == o.e; }
  bool operator<(const RootKey& o) const {
    if (ray != o.ray) return ray < o.ray;
    return lex_less(e, o.e);
  }
};

struct TwoCycleWitness {
  RootKey first;   // root e at ray i
  RootKey second;  // root e' at ray j
  Int c;           // <ray_j, e>  > 0
  Int d;           // <ray_i, e'> > 0
};

struct ClosureResult {
  Cone cone;
  std::vector<std::set<IVec, LexLess>> sets;  // closed root sets per ray
  std::optional<TwoCycleWitness> two_cycle;
  // For every root added during closure, the pair it came from.
  std::map<RootKey, std::pair<RootKey, RootKey>> provenance;
  std::size_t added = 0;

  bool is_unipotent() const { return !two_cycle.has_value(); }

  std::size_t total_roots() const {
    std::size_t t = 0;
    for (const auto& s : sets) t += s.size();
    return t;
  }
};

inline std::size_t default_closure_cap() {
  if (const char* env = std::getenv("TORIC_ALT_CAP")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    throw input_error("TORIC_ALT_CAP must be a positive integer");
  }
  return 10000;
}

/// Runs the closure. `roots[i]` holds the input roots distinguished at ray
/// i; each is checked against the cone. `cap` bounds the total number of
/// roots the closure may hold before giving up with input_error (0 means
/// use default_closure_cap()). Pairs are processed in increasing key order
/// and obstructions are recognized as soon as both roots exist, so the
/// result is independent of input order.
inline ClosureResult close_roots(const Cone& cone,
                                 const std::vector<std::vector<IVec>>& roots,
                                 std::size_t cap = 0) {
  if (cap == 0) cap = default_closure_cap();
  const std::size_t k = cone.num_rays();
  if (roots.size() != k)
    throw input_error("closure: one root set per ray expected");

  ClosureResult res;
  res.cone = cone;
  res.sets.assign(k, {});
  for (std::size_t i = 0; i < k; ++i)
    for (const IVec& e : roots[i]) {
      if (!is_root_at(cone, i, e))
        throw input_error("closure: input vector is not a root at ray " +
                          std::to_string(i + 1));
      res.sets[i].insert(e);
    }

  // Normalized pending pairs, smallest first. A pair whose pairings are
  // positive both ways is diverted to `obstructions` the moment it exists;
  // waiting for it to reach the front of the queue would let the joins of
  // smaller-sorting pairs grow the root sets without bound first.
  std::set<std::pair<RootKey, RootKey>> pending;
  std::set<std::pair<RootKey, RootKey>> obstructions;
  auto push_pair = [&](RootKey a, RootKey b) {
    if (a.ray == b.ray) return;  // same-ray derivations commute
    if (b < a) std::swap(a, b);
    Int c = cone.pair(b.ray, a.e);
    Int d = cone.pair(a.ray, b.e);
    if (c > 0 && d > 0)
      obstructions.insert({std::move(a), std::move(b)});
    else if (c > 0 || d > 0)
      pending.insert({std::move(a), std::move(b)});
    // Pairs with both pairings zero commute and need no processing.
  };
  for (std::size_t i = 0; i < k; ++i)
    for (const IVec& e : res.sets[i])
      for (std::size_t j = i + 1; j < k; ++j)
        for (const IVec& f : res.sets[j])
          push_pair({i, e}, {j, f});

  while (!pending.empty() || !obstructions.empty()) {
    if (!obstructions.empty()) {
      const auto& [a, b] = *obstructions.begin();
      res.two_cycle = TwoCycleWitness{a, b, cone.pair(b.ray, a.e),
                                      cone.pair(a.ray, b.e)};
      return res;
    }
    auto it = pending.begin();
    RootKey a = it->first;
    RootKey b = it->second;
    pending.erase(it);

    Int c = cone.pair(b.ray, a.e);  // pairing of e against the other ray
    Int d = cone.pair(a.ray, b.e);

    RootKey sum;
    sum.ray = c > 0 ? a.ray : b.ray;
    sum.e = add(a.e, b.e);
    if (res.sets[sum.ray].count(sum.e)) continue;

    if (res.total_roots() + 1 > cap)
      throw input_error(
          "closure exceeded the cap of " + std::to_string(cap) +
          " roots; raise it via --cap or TORIC_ALT_CAP if this is intended");
    res.sets[sum.ray].insert(sum.e);
    res.provenance.emplace(sum, std::make_pair(a, b));
    ++res.added;
    for (std::size_t j = 0; j < k; ++j)
      for (const IVec& f : res.sets[j])
        if (!(j == sum.ray && f == sum.e)) push_pair(sum, {j, f});
  }

  // Closure finished: re-check every pair against the case analysis. Any
  // violation here is a bug, not bad input.
  for (std::size_t i = 0; i < k; ++i)
    for (const IVec& e : res.sets[i])
      for (std::size_t j = 0; j < k; ++j) {
        if (j == i) continue;
        for (const IVec& f : res.sets[j]) {
          Int c = cone.pair(j, e);
          Int d = cone.pair(i, f);
          if (c > 0 && d > 0)
            throw internal_error("closure self-check: unprocessed pair");
          if (c > 0 && !res.sets[i].count(add(e, f)))
            throw internal_error("closure self-check: missing bracket root");
          if (d > 0 && !res.sets[j].count(add(e, f)))
            throw internal_error("closure self-check: missing bracket root");
        }
      }
  return res;
}

// ---------------------------------------------------------------------------
// Ray interaction graph.
// ---------------------------------------------------------------------------

/// Edge j -> i when some root at ray i pairs positively with ray j, i.e.
/// the one-parameter subgroups at j fail to commute past those at i.
inline std::vector<std::set<std::size_t>> build_graph(const ClosureResult& cl) {
  const std::size_t k = cl.cone.num_rays();
  std::vector<std::set<std::size_t>> out(k);
  for (std::size_t i = 0; i < k; ++i)
    for (const IVec& e : cl.sets[i])
      for (std::size_t j = 0; j < k; ++j) {
        if (j == i) continue;
        if (cl.cone.pair(j, e) > 0) out[j].insert(i);
      }
  return out;
}

/// Repeated sink extraction: each step removes a vertex with no remaining
/// outgoing edge, preferring the smallest index. For a closed family
/// without a two-cycle the graph is acyclic, so this consumes all vertices.
inline std::vector<std::size_t> sink_order(
    const std::vector<std::set<std::size_t>>& graph) {
  const std::size_t k = graph.size();
  std::vector<bool> removed(k, false);
  std::vector<std::size_t> order;
  for (std::size_t step = 0; step < k; ++step) {
    std::size_t pick = k;
    for (std::size_t v = 0; v < k && pick == k; ++v) {
      if (removed[v]) continue;
      bool sink = true;
      for (std::size_t w : graph[v])
        if (!removed[w]) {
          sink = false;
          break;
        }
      if (sink) pick = v;
    }
    if (pick == k)
      throw internal_error("sink order: interaction graph has a cycle");
    removed[pick] = true;
    order.push_back(pick);
  }
  return order;
}

// ---------------------------------------------------------------------------
// Structure constants and the lower central series.
// ---------------------------------------------------------------------------

struct StructureConstants {
  std::vector<RootKey> basis;  // sorted by RootKey
  // brackets[{s,t}] = (target index, coefficient) with s < t meaning
  // [basis[s], basis[t]] = coeff * basis[target]; zero brackets omitted.
  std::map<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, Int>>
      brackets;
};

inline StructureConstants structure_constants(const ClosureResult& cl) {
  if (!cl.is_unipotent())
    throw internal_error("structure constants require a closed family");
  StructureConstants sc;
  std::map<RootKey, std::size_t> index;
  for (std::size_t i = 0; i < cl.sets.size(); ++i)
    for (const IVec& e : cl.sets[i]) sc.basis.push_back({i, e});
  // std::map iteration above yields RootKey order already; keep it explicit.
  std::sort(sc.basis.begin(), sc.basis.end());
  for (std::size_t t = 0; t < sc.basis.size(); ++t) index[sc.basis[t]] = t;

  for (std::size_t s = 0; s < sc.basis.size(); ++s)
    for (std::size_t t = s + 1; t < sc.basis.size(); ++t) {
      const RootKey& a = sc.basis[s];
      const RootKey& b = sc.basis[t];
      if (a.ray == b.ray) continue;
      Int c = cl.cone.pair(b.ray, a.e);
      Int d = cl.cone.pair(a.ray, b.e);
      if (c == 0 && d == 0) continue;
      RootKey sum{c > 0 ? a.ray : b.ray, add(a.e, b.e)};
      auto it = index.find(sum);
      if (it == index.end())
        throw internal_error("structure constants: target root missing");
      sc.brackets[{s, t}] = {it->second, c > 0 ? -c : d};
    }
  return sc;
}

struct LowerCentralSeries {
  std::vector<std::size_t> dims;  // dim L^1, dim L^2, ..., final 0
  std::size_t nilpotency_class = 0;
  // members[m] = basis indices spanning L^(m+1).
  std::vector<std::vector<std::size_t>> members;
};

/// Because every bracket of basis vectors is an integer multiple of a basis
/// vector, each term of the series is spanned by a subset of the basis and
/// the whole series is a subset computation.
inline LowerCentralSeries lower_central_series(const StructureConstants& sc) {
  LowerCentralSeries lcs;
  const std::size_t nb = sc.basis.size();
  std::set<std::size_t> cur;
  for (std::size_t t = 0; t < nb; ++t) cur.insert(t);
  while (!cur.empty()) {
    lcs.dims.push_back(cur.size());
    lcs.members.emplace_back(cur.begin(), cur.end());
    std::set<std::size_t> next;
    // [L, L^m] needs one factor in L^m; the other ranges over all of L.
    for (const auto& [pair, target] : sc.brackets)
      if (cur.count(pair.first) || cur.count(pair.second))
        next.insert(target.first);
    cur = std::move(next);
  }
  lcs.dims.push_back(0);
  lcs.nilpotency_class = lcs.dims.size() - 1;
  return lcs;
}

}  // namespace toric_alt
