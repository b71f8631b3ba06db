// SPDX-License-Identifier: Apache-2.0
//
// The top-level decision: the group generated by the one-parameter
// subgroups of a finite family of root derivations is either unipotent
// (the bracket closure terminates with no obstructing pair) or contains a
// free subgroup of rank two (an obstructing pair exists, and a concrete
// pair of automorphisms is produced and verified).
//
// Verification of a free pair is constructive and layered:
//   * every reduced word up to a length bound is checked to move a fixed
//     rational base point (with a symbolic recheck when the point happens
//     to return);
//   * short words are additionally checked as full polynomial identities;
//   * class-specific certificates: a degree growth recursion when some
//     pairing is at least two, and an exact reduction to the classical
//     free pair of triangular 2x2 integer matrices when both pairings are
//     one.

#pragma once

#include "toric_alt/lie_series.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace toric_alt {

enum class FreePairClass {
  kBothLarge,  // c >= 2 and d >= 2
  kLargeUnit,  // c >= 2 and d == 1
  kUnitUnit,   // c == d == 1
};

inline const char* to_string(FreePairClass c) {
  switch (c) {
    case FreePairClass::kBothLarge: return "both pairings >= 2";
    case FreePairClass::kLargeUnit: return "pairings >= 2 and = 1";
    case FreePairClass::kUnitUnit: return "both pairings = 1";
  }
  return "?";
}

/// Input roots (leaves of the provenance tree) a discovered root descends
/// from, sorted. An input root reports itself.
inline std::vector<RootKey> trace_origin(const ClosureResult& cl,
                                         const RootKey& rk) {
  std::vector<RootKey> out;
  std::set<RootKey> seen;
  std::vector<RootKey> stack{rk};
  while (!stack.empty()) {
    RootKey k = stack.back();
    stack.pop_back();
    if (!seen.insert(k).second) continue;
    auto it = cl.provenance.find(k);
    if (it == cl.provenance.end()) {
      out.push_back(k);
    } else {
      stack.push_back(it->second.first);
      stack.push_back(it->second.second);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct FreeWitness {
  // The obstructing roots, ordered so that c >= d.
  RootKey first;   // root at ray i with c = <ray_j, first.e> >= 1
  RootKey second;  // root at ray j with d = <ray_i, second.e> >= 1
  Int c;
  Int d;
  FreePairClass pair_class = FreePairClass::kBothLarge;
  Int parameter;   // time value used in both one-parameter subgroups

  std::vector<RootKey> origin_first;   // input roots behind `first`
  std::vector<RootKey> origin_second;  // input roots behind `second`

  // The free pair, acting on the quotient presentation A^k.
  PolyAutomorphism gen1, gen2;

  // Verification record.
  std::size_t words_checked = 0;
  std::size_t max_word_len = 0;
  std::size_t point_returns = 0;   // point collisions resolved symbolically
  std::size_t symbolic_checked = 0;
  std::string certificate;         // class-specific certificate note
};

namespace detail {

inline std::vector<Rat> apply_to_point(const PolyAutomorphism& a,
                                       const std::vector<Rat>& p) {
  std::vector<Rat> q(p.size());
  for (std::size_t i = 0; i < a.images.size(); ++i) q[i] = a.images[i].eval(p);
  return q;
}

/// Depth-first walk over all reduced words in two generators and their
/// inverses, carrying the orbit of the base point. Letters are 0..3 for
/// gen1, gen1^-1, gen2, gen2^-1.
struct WordWalk {
  const PolyAutomorphism* maps[4];
  std::vector<Rat> base;
  std::size_t max_len = 0;
  std::size_t words = 0;
  std::size_t point_returns = 0;

  void run() {
    std::vector<int> word;
    descend(word, base);
  }

  void descend(std::vector<int>& word, const std::vector<Rat>& point) {
    if (word.size() == max_len) return;
    for (int letter = 0; letter < 4; ++letter) {
      if (!word.empty() && (word.back() ^ 1) == letter) continue;  // cancels
      word.push_back(letter);
      std::vector<Rat> next = apply_to_point(*maps[letter], point);
      ++words;
      if (next == base) {
        // The base point returned; decide the word symbolically.
        PolyAutomorphism w =
            PolyAutomorphism::identity(maps[0]->nvars());
        for (int l : word) w = mul(w, *maps[l]);
        if (w.is_identity())
          throw internal_error(
              "free pair verification failed: a reduced word acts as the "
              "identity");
        ++point_returns;
      }
      descend(word, next);
      word.pop_back();
    }
  }
};

/// Full polynomial check of every reduced word up to `len`.
inline std::size_t symbolic_word_check(const PolyAutomorphism* maps[4],
                                       std::size_t len) {
  std::size_t checked = 0;
  std::vector<int> word;
  PolyAutomorphism id = PolyAutomorphism::identity(maps[0]->nvars());
  struct Frame {
    PolyAutomorphism acc;
    std::vector<int> word;
  };
  std::vector<Frame> stack{{id, {}}};
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (!f.word.empty()) {
      ++checked;
      if (f.acc.is_identity())
        throw internal_error(
            "free pair verification failed: a short word is the identity");
    }
    if (f.word.size() == len) continue;
    for (int letter = 3; letter >= 0; --letter) {
      if (!f.word.empty() && (f.word.back() ^ 1) == letter) continue;
      Frame g;
      g.acc = mul(f.acc, *maps[letter]);
      g.word = f.word;
      g.word.push_back(letter);
      stack.push_back(std::move(g));
    }
  }
  return checked;
}

/// Exact degree recursion behind the growth certificate for c >= 2, d >= 1.
/// Simulates the (x_i, x_j)-degrees of the two moving coordinates along
/// alternating blocks; every step must strictly dominate the previous
/// degree, except the harmless unit-pairing first block, whose added term
/// cannot cancel (it carries a different monomial). Returns a description,
/// or throws internal_error when the recursion fails.
inline std::string degree_growth_certificate(const Int& c, const Int& d,
                                             std::size_t blocks) {
  if (c < 2) throw internal_error("degree certificate requires c >= 2");
  if (d < 1) throw internal_error("degree certificate requires d >= 1");
  for (int start = 0; start < 2; ++start) {
    Int deg_p = 1, deg_q = 1;
    bool first = true;
    int turn = start;  // 0: block of gen1, 1: block of gen2
    for (std::size_t b = 0; b < blocks; ++b, turn ^= 1) {
      if (turn == 0) {
        Int cand = c * deg_q;
        if (!(cand > deg_p))
          throw internal_error("degree certificate: gen1 block stalls");
        deg_p = cand;
      } else {
        Int cand = d * deg_p;
        bool tie_ok = first && d == 1;  // distinct monomials at depth one
        if (!(cand > deg_q) && !(tie_ok && cand == deg_q))
          throw internal_error("degree certificate: gen2 block stalls");
        deg_q = cand;
      }
      first = false;
    }
  }
  return "degree growth certified for " + std::to_string(blocks) +
         " alternating blocks (c=" + c.str() + ", d=" + d.str() + ")";
}

/// For the unit-unit class: restrict the pair to the plane of the two
/// moving coordinates (all others frozen at 1) and demand exactly the
/// classical free pair of triangular matrices with off-diagonal entry >= 2.
inline std::string matrix_certificate(const PolyAutomorphism& g1,
                                      const PolyAutomorphism& g2,
                                      std::size_t vi, std::size_t vj,
                                      const Int& parameter) {
  if (parameter < 2)
    throw internal_error("matrix certificate requires parameter >= 2");
  const std::size_t k = g1.nvars();
  // Freeze every coordinate except vi, vj at 1, then read off the linear
  // action on (x_vi, x_vj).
  std::vector<SparsePoly> frozen(k);
  for (std::size_t t = 0; t < k; ++t) {
    if (t == vi || t == vj)
      frozen[t] = SparsePoly::variable(k, t);
    else
      frozen[t] = SparsePoly::constant(k, 1);
  }
  auto restrict_map = [&](const PolyAutomorphism& g, std::size_t target,
                          std::size_t other) {
    SparsePoly img = g.images[target].subst(frozen);
    SparsePoly expect = SparsePoly::variable(k, target) +
                        SparsePoly::constant(k, Rat(parameter)) *
                            SparsePoly::variable(k, other);
    if (img != expect)
      throw internal_error("matrix certificate: restriction is not the "
                           "expected shear");
    if (g.images[other].subst(frozen) != SparsePoly::variable(k, other))
      throw internal_error("matrix certificate: second coordinate moves");
  };
  restrict_map(g1, vi, vj);
  restrict_map(g2, vj, vi);
  return "restriction to the moving plane is the free pair of shears with "
         "entry " + parameter.str();
}

}  // namespace detail

/// Builds the free pair for an obstructing pair of roots and verifies it.
/// `max_word_len` bounds the exhaustive word check (0 skips it).
inline FreeWitness build_free_witness(const ClosureResult& cl,
                                      std::size_t max_word_len = 8) {
  if (!cl.two_cycle)
    throw internal_error("build_free_witness: no obstructing pair");
  const Cone& cone = cl.cone;
  FreeWitness w;
  w.first = cl.two_cycle->first;
  w.second = cl.two_cycle->second;
  w.c = cl.two_cycle->c;
  w.d = cl.two_cycle->d;
  if (w.c < w.d) {
    std::swap(w.first, w.second);
    std::swap(w.c, w.d);
  }
  if (w.d < 1) throw internal_error("build_free_witness: bad pairings");
  w.pair_class = w.d >= 2 ? FreePairClass::kBothLarge
                 : w.c >= 2 ? FreePairClass::kLargeUnit
                            : FreePairClass::kUnitUnit;
  w.parameter = w.pair_class == FreePairClass::kUnitUnit ? 2 : 1;
  w.origin_first = trace_origin(cl, w.first);
  w.origin_second = trace_origin(cl, w.second);

  const std::size_t k = cone.num_rays();
  MonomialField m1 = lift_derivation(cone, w.first.ray, w.first.e);
  MonomialField m2 = lift_derivation(cone, w.second.ray, w.second.e);
  PolyField f1 = zero_field(k);
  f1[m1.var] = SparsePoly::monomial(k, Rat(w.parameter), m1.exponents);
  PolyField f2 = zero_field(k);
  f2[m2.var] = SparsePoly::monomial(k, Rat(w.parameter), m2.exponents);
  w.gen1 = exp_field(f1);
  w.gen2 = exp_field(f2);

  // Class-specific certificate.
  if (w.pair_class == FreePairClass::kUnitUnit) {
    w.certificate = detail::matrix_certificate(w.gen1, w.gen2, w.first.ray,
                                               w.second.ray, w.parameter);
  } else {
    w.certificate = detail::degree_growth_certificate(w.c, w.d, 16);
  }

  // Exhaustive reduced-word check through the orbit of a rational point.
  w.max_word_len = max_word_len;
  if (max_word_len > 0) {
    PolyAutomorphism inv1 = inverse(w.gen1);
    PolyAutomorphism inv2 = inverse(w.gen2);
    detail::WordWalk walk;
    walk.maps[0] = &w.gen1;
    walk.maps[1] = &inv1;
    walk.maps[2] = &w.gen2;
    walk.maps[3] = &inv2;
    walk.base.assign(k, Rat(1));
    walk.base[w.first.ray] = Rat(5, 7);
    walk.base[w.second.ray] = Rat(3, 5);
    walk.max_len = max_word_len;
    walk.run();
    w.words_checked = walk.words;
    w.point_returns = walk.point_returns;

    const PolyAutomorphism* maps[4] = {&w.gen1, &inv1, &w.gen2, &inv2};
    w.symbolic_checked =
        detail::symbolic_word_check(maps, std::min<std::size_t>(4, max_word_len));
  }
  return w;
}

// ---------------------------------------------------------------------------
// Unipotent certificate.
// ---------------------------------------------------------------------------

struct UnipotentCertificate {
  std::vector<std::set<std::size_t>> graph;  // edges j -> i
  std::vector<std::size_t> order;            // sink elimination order
  LowerCentralSeries lcs;
  std::size_t algebra_dim = 0;
  std::size_t group_law_samples = 0;  // exp(v) exp(w) = exp(BCH) checks
};

/// Deterministic small rational, numerator in [-3, 3], denominator 1 or 2.
/// Raw modulo keeps the stream identical across platforms.
inline Rat sample_rat(std::mt19937& rng) {
  Int num = Int(static_cast<long>(rng() % 7)) - 3;
  Int den = 1 + static_cast<long>(rng() % 2);
  return Rat(num, den);
}

inline UnipotentCertificate certify_unipotent(const ClosureResult& cl,
                                              const LieAlgebra& alg,
                                              std::size_t samples,
                                              unsigned seed) {
  UnipotentCertificate cert;
  cert.graph = build_graph(cl);
  cert.order = sink_order(cert.graph);
  cert.lcs = lower_central_series(alg.sc);
  cert.algebra_dim = alg.dim();

  std::mt19937 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    LieElement v = lie_zero(alg), u = lie_zero(alg);
    for (std::size_t t = 0; t < alg.dim(); ++t) {
      v[t] = sample_rat(rng);
      u[t] = sample_rat(rng);
    }
    PolyAutomorphism prod = mul(lie_exp(alg, v), lie_exp(alg, u));
    if (!(prod == lie_exp(alg, dynkin_bch(alg, v, u))))
      throw internal_error("group law check failed");
    ++cert.group_law_samples;
  }
  return cert;
}

// ---------------------------------------------------------------------------
// Decision.
// ---------------------------------------------------------------------------

struct DecideOptions {
  std::size_t cap = 0;            // closure cap, 0 = default/env
  std::size_t max_word_len = 8;   // free pair word verification bound
  std::size_t group_law_samples = 8;
  unsigned seed = 0x5eed1e77;
};

struct Decision {
  ClosureResult closure;
  std::optional<UnipotentCertificate> unipotent;
  std::optional<FreeWitness> witness;

  bool is_unipotent() const { return unipotent.has_value(); }
};

inline Decision decide(const Cone& cone,
                       const std::vector<std::vector<IVec>>& roots,
                       const DecideOptions& opt = {}) {
  ValidationReport rep = validate_cone(cone);
  if (!rep.ok) {
    std::string msg = "invalid cone:";
    for (const ConeCheck& c : rep.checks)
      if (!c.pass) msg += " [" + c.name + (c.detail.empty() ? "" : ": " + c.detail) + "]";
    throw input_error(msg);
  }
  Decision dec;
  dec.closure = close_roots(cone, roots, opt.cap);
  if (dec.closure.two_cycle) {
    dec.witness = build_free_witness(dec.closure, opt.max_word_len);
  } else {
    LieAlgebra alg = make_lie_algebra(dec.closure);
    dec.unipotent =
        certify_unipotent(dec.closure, alg, opt.group_law_samples, opt.seed);
  }
  return dec;
}

}  // namespace toric_alt
