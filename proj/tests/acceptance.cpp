// SPDX-License-Identifier: Apache-2.0
//
// Acceptance gate: seven end-to-end checks over the whole pipeline, each
// printed as a single PASS/FAIL line. The binary exits nonzero when any
// check fails, and failure details go to the indented lines below the
// verdict. Every check is exact; there are no tolerances anywhere.

#include "support.hpp"

#include <toric_alt/alternative.hpp>
#include <toric_alt/closure.hpp>
#include <toric_alt/derivations.hpp>
#include <toric_alt/json_io.hpp>
#include <toric_alt/lie_series.hpp>
#include <toric_alt/polyauto.hpp>
#include <toric_alt/roots.hpp>

#include <cstdio>
#include <exception>
#include <functional>
#include <set>
#include <string>
#include <vector>

namespace {

using namespace toric_alt;
using test_support::iv;
using test_support::make_cone;

struct Checker {
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::string fixture(const std::string& name) {
  return std::string(FIXTURE_DIR) + "/" + name;
}

Cone octant(int n) {
  std::vector<IVec> rays;
  for (int i = 0; i < n; ++i) {
    IVec r(n, Int(0));
    r[static_cast<std::size_t>(i)] = 1;
    rays.push_back(r);
  }
  return make_cone(rays);
}

// ---------------------------------------------------------------------------
// 1. The three-dimensional golden family: four roots on the octant whose
//    closure spans a ten-dimensional algebra with a known basis, known
//    interaction graph, and a lower central series that dies after exactly
//    five bracket steps.
// ---------------------------------------------------------------------------
void golden_family(Checker& ck) {
  Problem p = load_problem(fixture("affine3_ladder.json"));
  Decision dec = decide(p.cone, p.roots);
  ck.require(dec.is_unipotent(), "verdict must be unipotent");
  if (!dec.is_unipotent()) return;

  const ClosureResult& cl = dec.closure;
  ck.require(cl.sets[0].size() == 6 && cl.sets[1].size() == 3 &&
                 cl.sets[2].size() == 1,
             "closed root counts must be 6, 3, 1");

  const UnipotentCertificate& cert = *dec.unipotent;
  ck.require(cert.algebra_dim == 10, "algebra dimension must be 10");
  ck.require(cert.graph[0].empty() &&
                 cert.graph[1] == std::set<std::size_t>{0} &&
                 cert.graph[2] == std::set<std::size_t>{0, 1},
             "interaction edges must be exactly 2->1, 3->1, 3->2");
  ck.require(cert.order == std::vector<std::size_t>({0, 1, 2}),
             "sink order must be L1, L2, L3");
  ck.require(cert.lcs.dims == std::vector<std::size_t>({10, 7, 4, 2, 1, 0}),
             "series dims must be 10, 7, 4, 2, 1, 0");
  ck.require(cert.lcs.dims.size() == 6 && cert.lcs.dims[5] == 0,
             "applying [L, .] five times must reach zero");
  ck.require(cert.lcs.nilpotency_class == 5, "nilpotency class must be 5");

  // The basis, realized as monomial fields on k[x1,x2,x3], must be exactly
  // the known ten-element span: 1, x3, x3^2, x3^3, x2, x2*x3 on d/dx1;
  // 1, x3, x3^2 on d/dx2; and 1 on d/dx3.
  LieAlgebra alg = make_lie_algebra(cl);
  std::set<std::pair<std::size_t, IVec>> expect = {
      {0, iv({0, 0, 0})}, {0, iv({0, 0, 1})}, {0, iv({0, 0, 2})},
      {0, iv({0, 0, 3})}, {0, iv({0, 1, 0})}, {0, iv({0, 1, 1})},
      {1, iv({0, 0, 0})}, {1, iv({0, 0, 1})}, {1, iv({0, 0, 2})},
      {2, iv({0, 0, 0})},
  };
  std::set<std::pair<std::size_t, IVec>> got;
  for (const auto& [key, idx] : alg.lift_index) got.insert(key);
  ck.require(got == expect, "realized basis differs from the known span");
}

// ---------------------------------------------------------------------------
// 2. Planar verdict matrix: the five fixture families on the plane octant
//    with pairing patterns (0,0), (1,0), (2,1), (1,1), (2,2). The free
//    cases run the full word verification at length 8 with no failing word.
// ---------------------------------------------------------------------------
void planar_matrix(Checker& ck) {
  DecideOptions opt;  // defaults: max_word_len = 8

  Problem pc = load_problem(fixture("plane_commuting.json"));
  Decision commuting = decide(pc.cone, pc.roots, opt);
  ck.require(commuting.is_unipotent() &&
                 commuting.unipotent->lcs.nilpotency_class == 1 &&
                 commuting.unipotent->algebra_dim == 2,
             "(0,0) must be abelian unipotent of dimension 2");

  Problem ph = load_problem(fixture("plane_heisenberg.json"));
  Decision heis = decide(ph.cone, ph.roots, opt);
  ck.require(heis.is_unipotent() &&
                 heis.unipotent->lcs.nilpotency_class == 2 &&
                 heis.unipotent->algebra_dim == 3,
             "(1,0) must be unipotent of dimension 3, class 2");

  struct FreeCase {
    const char* file;
    FreePairClass cls;
    long c, d;
  };
  const std::vector<FreeCase> frees = {
      {"plane_c2d1.json", FreePairClass::kLargeUnit, 2, 1},
      {"plane_c1d1.json", FreePairClass::kUnitUnit, 1, 1},
      {"plane_c2d2.json", FreePairClass::kBothLarge, 2, 2},
  };
  for (const FreeCase& fc : frees) {
    Problem p = load_problem(fixture(fc.file));
    Decision dec = decide(p.cone, p.roots, opt);
    ck.require(!dec.is_unipotent(),
               std::string(fc.file) + ": verdict must be free");
    if (dec.is_unipotent()) continue;
    const FreeWitness& w = *dec.witness;
    ck.require(w.pair_class == fc.cls && w.c == Int(fc.c) && w.d == Int(fc.d),
               std::string(fc.file) + ": wrong pairing class");
    ck.require(w.max_word_len == 8 && w.words_checked == 13120,
               std::string(fc.file) +
                   ": all 13120 reduced words up to length 8 must be checked");
    ck.require(!w.certificate.empty(),
               std::string(fc.file) + ": missing certificate");
  }
}

// ---------------------------------------------------------------------------
// 3. The bracket formula against the direct commutator on characters:
//    for random homogeneous derivations D1, D2 and random exponents m,
//    [D1,D2](chi^m) computed from the closed form must equal
//    D1(D2(chi^m)) - D2(D1(chi^m)) term for term.
// ---------------------------------------------------------------------------
void bracket_oracle(Checker& ck) {
  std::mt19937 rng(0xb4ac0feau);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 2 + test_support::pick(rng, 3);
    auto rand_vec = [&](long lo, long hi) {
      IVec v(n);
      for (Int& x : v) x = Int(test_support::pick_range(rng, lo, hi));
      return v;
    };
    IVec rho1 = rand_vec(-4, 4), rho2 = rand_vec(-4, 4);
    if (is_zero(rho1) || is_zero(rho2)) {
      --trial;
      continue;
    }
    HomogeneousDerivation a = make_derivation(
        Int(test_support::pick_range(rng, 1, 2)), rho1, rand_vec(-3, 3));
    HomogeneousDerivation b = make_derivation(
        Int(test_support::pick_range(rng, 1, 2)), rho2, rand_vec(-3, 3));
    HomogeneousDerivation br = bracket(a, b);

    for (int cs = 0; cs < 20; ++cs) {
      IVec m = rand_vec(-5, 5);
      auto [cb, mb] = apply_to_character(b, m);
      auto [ca, ma] = apply_to_character(a, m);
      Int s1 = cb * a.coeff * dot(a.rho, mb);   // D1 after D2
      Int s2 = ca * b.coeff * dot(b.rho, ma);   // D2 after D1
      auto [cw, mw] = apply_to_character(br, m);
      ck.require(cw == s1 - s2, "bracket coefficient mismatch");
      if (cw != 0)
        ck.require(mw == add(m, add(a.e, b.e)), "bracket exponent mismatch");
      if (!ck.failures.empty()) return;
    }
  }
}

// ---------------------------------------------------------------------------
// 4. Lift compatibility: for root pairs e at ray i, f at ray j on random
//    valid cones, the commutator of the lifted monomial fields equals the
//    lift of the bracket combination d*lift_j(e+f) - c*lift_i(e+f).
// ---------------------------------------------------------------------------
void lift_compatibility(Checker& ck) {
  std::mt19937 rng(0x11f7u);

  auto check_pair = [&ck](const Cone& cone, std::size_t i, const IVec& e,
                          std::size_t j, const IVec& f) {
    MonomialField mi = lift_derivation(cone, i, e);
    MonomialField mj = lift_derivation(cone, j, f);
    FieldSum up = field_bracket(mi, mj);

    Int c = cone.pair(j, e);
    Int d = cone.pair(i, f);
    FieldSum expect;
    IVec s = add(e, f);
    if (d != 0) {
      MonomialField t = lift_derivation(cone, j, s);
      t.coeff = d;
      expect.push_back(t);
    }
    if (c != 0) {
      MonomialField t = lift_derivation(cone, i, s);
      t.coeff = -c;
      expect.push_back(t);
    }
    ck.require(up == normalize(expect), "lifted bracket mismatch");
  };

  for (int trial = 0; trial < 48; ++trial) {
    std::size_t n = 2 + test_support::pick(rng, 3);
    auto up = test_support::random_unimodular(rng, n);
    Cone cone = test_support::cone_from_columns(up.u);
    std::size_t i = test_support::pick(rng, static_cast<unsigned>(n));
    std::size_t j = test_support::pick(rng, static_cast<unsigned>(n - 1));
    if (j >= i) ++j;
    IVec e = up.vt * test_support::octant_root(rng, n, i, 2, false);
    IVec f = up.vt * test_support::octant_root(rng, n, j, 2, false);
    check_pair(cone, i, e, j, f);
    if (!ck.failures.empty()) return;
  }

  // Two singular/non-simplicial cones exercise k > n and torsion.
  Problem q = load_problem(fixture("quotient_z2.json"));
  check_pair(q.cone, 0, iv({-1, 1}), 1, iv({1, -1}));
  Problem sq = load_problem(fixture("cone_over_square.json"));
  check_pair(sq.cone, 0, iv({-1, 0, 0}), 2, iv({1, 0, 0}));
}

// ---------------------------------------------------------------------------
// 5. exp/log/BCH/Zassenhaus: exact round trips, the group law through the
//    independent Dynkin series, and exact Zassenhaus refactorization.
// ---------------------------------------------------------------------------
void series_identities(Checker& ck) {
  std::mt19937 rng(0x5e51e5u);

  // 100 exact log(exp(f)) = f round trips on random triangular fields.
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 2 + test_support::pick(rng, 3);
    PolyField f = zero_field(n);
    for (std::size_t i = 0; i < n; ++i) {
      int terms = static_cast<int>(test_support::pick(rng, 3));
      for (int t = 0; t < terms; ++t) {
        IVec m(n, Int(0));
        for (std::size_t v = i + 1; v < n; ++v)
          m[v] = Int(test_support::pick_range(rng, 0, 2));
        f[i].add_term(m, Rat(test_support::pick_range(rng, -3, 3),
                             test_support::pick_range(rng, 1, 2)));
      }
    }
    if (log_auto(exp_field(f)) != f) {
      ck.require(false, "log(exp(f)) != f");
      return;
    }
  }

  // Group law on the two reference algebras, 50 random pairs each: the
  // automorphism product must equal the exponential of the Dynkin series,
  // and the Dynkin series must match the logarithm-based combination.
  ClosureResult h_cl =
      close_roots(octant(2), {{iv({-1, 1})}, {iv({0, -1})}});
  ClosureResult l_cl = close_roots(
      octant(3),
      {{iv({-1, 1, 1})}, {iv({0, -1, 1}), iv({0, -1, 2})}, {iv({0, 0, -1})}});
  for (const ClosureResult& cl : {h_cl, l_cl}) {
    LieAlgebra alg = make_lie_algebra(cl);
    for (int trial = 0; trial < 50; ++trial) {
      LieElement a = lie_zero(alg), b = lie_zero(alg);
      for (std::size_t t = 0; t < alg.dim(); ++t) {
        a[t] = sample_rat(rng);
        b[t] = sample_rat(rng);
      }
      LieElement dk = dynkin_bch(alg, a, b);
      if (dk != bch(alg, a, b)) {
        ck.require(false, "dynkin series disagrees with log of the product");
        return;
      }
      if (!(mul(lie_exp(alg, a), lie_exp(alg, b)) == lie_exp(alg, dk))) {
        ck.require(false, "group law exp(a) exp(b) = exp(BCH) failed");
        return;
      }
    }
  }

  // Zassenhaus: the known half-shear tail on the two-root plane family,
  // and exact product verification (built into the call) on random splits.
  LieAlgebra h = make_lie_algebra(h_cl);
  ZassenhausSplit zs = zassenhaus_split(h, {lie_basis(h, 1), lie_basis(h, 2)});
  LieElement half = lie_zero(h);
  half[0] = Rat(1, 2);
  ck.require(zs.tail.size() == 1 && zs.tail[0] == half,
             "two-root plane family must split with tail exp((1/2) d/dx1)");

  LieAlgebra l = make_lie_algebra(l_cl);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<LieElement> parts;
    std::size_t count = 2 + test_support::pick(rng, 2);
    for (std::size_t p = 0; p < count; ++p) {
      LieElement v = lie_zero(l);
      for (std::size_t t = 0; t < l.dim(); ++t) v[t] = sample_rat(rng);
      parts.push_back(v);
    }
    ZassenhausSplit split = zassenhaus_split(l, parts);  // verifies exactly
    ck.require(split.tail.size() <= l.nilpotency_class - 1,
               "tail longer than the nilpotency class allows");
  }
}

// ---------------------------------------------------------------------------
// 6. Class group degree invariance: every enumerated root of every test
//    cone lifts to a field of trivial class-group degree; a corrupted
//    exponent vector on the torsion fixture lands on the nonzero class.
// ---------------------------------------------------------------------------
void class_invariance(Checker& ck) {
  std::vector<Cone> cones = {octant(2), octant(3)};
  Problem q = load_problem(fixture("quotient_z2.json"));
  Problem sq = load_problem(fixture("cone_over_square.json"));
  cones.push_back(q.cone);
  cones.push_back(sq.cone);

  for (const Cone& cone : cones) {
    ClassGroup cg = class_group(cone);
    auto groups = enumerate_roots(cone, Int(3));
    std::size_t seen = 0;
    for (std::size_t j = 0; j < groups.size(); ++j)
      for (const IVec& e : groups[j]) {
        ++seen;
        if (!is_cox_invariant(cg, lift_derivation(cone, j, e))) {
          ck.require(false, "lifted root degree is not trivial in Cl");
          return;
        }
      }
    ck.require(seen > 0, "test cone has no roots within the bound");
  }

  ClassGroup qcg = class_group(q.cone);
  ck.require(class_group_shape(qcg) == "Z/2",
             "torsion fixture must have class group Z/2");
  MonomialField lift = lift_derivation(q.cone, 0, iv({-1, 1}));
  MonomialField bad = lift;
  bad.exponents[1] += 1;
  ck.require(is_cox_invariant(qcg, lift) && !is_cox_invariant(qcg, bad),
             "corrupted exponent vector must leave the trivial class");

  ClassGroup sqcg = class_group(sq.cone);
  ck.require(class_group_shape(sqcg) == "Z^1 + Z/2",
             "square-base fixture must have class group Z + Z/2");
}

// ---------------------------------------------------------------------------
// 7. Determinism and robustness: byte-identical decisions across repeated
//    runs and input permutations; planted obstructions are always found
//    and trace back to a planted root; the safety cap stays untouched on
//    200 random acyclic instances.
// ---------------------------------------------------------------------------
void determinism_and_robustness(Checker& ck) {
  Problem ladder = load_problem(fixture("affine3_ladder.json"));
  DecideOptions opt;
  opt.group_law_samples = 2;
  std::string once =
      decision_to_json(decide(ladder.cone, ladder.roots, opt)).dump();
  std::string again =
      decision_to_json(decide(ladder.cone, ladder.roots, opt)).dump();
  ck.require(once == again, "repeated unipotent runs differ");

  std::vector<std::vector<IVec>> permuted = ladder.roots;
  std::swap(permuted[1][0], permuted[1][1]);
  std::string perm =
      decision_to_json(decide(ladder.cone, permuted, opt)).dump();
  ck.require(once == perm, "root order changed the unipotent decision");

  DecideOptions fast;
  fast.max_word_len = 4;
  std::vector<std::vector<IVec>> free_roots = {{iv({-1, 1}), iv({-1, 2})},
                                               {iv({1, -1})}};
  std::string f1 =
      decision_to_json(decide(octant(2), free_roots, fast)).dump();
  std::swap(free_roots[0][0], free_roots[0][1]);
  std::string f2 =
      decision_to_json(decide(octant(2), free_roots, fast)).dump();
  ck.require(f1 == f2, "root order changed the free decision");

  std::mt19937 rng(0xd15c0u);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 2 + test_support::pick(rng, 3);
    RootKey p1, p2;
    test_support::RandomInstance inst =
        test_support::random_planted_instance(rng, n, p1, p2);
    Decision dec = decide(inst.cone, inst.roots, fast);
    if (dec.is_unipotent()) {
      ck.require(false, "planted obstruction was not found");
      return;
    }
    std::set<RootKey> origins(dec.witness->origin_first.begin(),
                              dec.witness->origin_first.end());
    origins.insert(dec.witness->origin_second.begin(),
                   dec.witness->origin_second.end());
    if (!origins.count(p1) && !origins.count(p2)) {
      ck.require(false, "obstruction does not trace back to a planted root");
      return;
    }
  }

  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 2 + test_support::pick(rng, 3);
    test_support::RandomInstance inst =
        test_support::random_acyclic_instance(rng, n);
    try {
      ClosureResult cl = close_roots(inst.cone, inst.roots, 10000);
      if (!cl.is_unipotent()) {
        ck.require(false, "acyclic instance produced an obstructing pair");
        return;
      }
      sink_order(build_graph(cl));
    } catch (const std::exception& e) {
      ck.require(false, std::string("acyclic instance failed: ") + e.what());
      return;
    }
  }
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<void(Checker&)> fn;
  };
  const std::vector<Criterion> criteria = {
      {"golden three-dimensional family", golden_family},
      {"planar pair verdict matrix", planar_matrix},
      {"bracket formula vs direct commutator", bracket_oracle},
      {"lift compatibility with field brackets", lift_compatibility},
      {"exp/log/BCH/Zassenhaus identities", series_identities},
      {"class group degree invariance", class_invariance},
      {"determinism and robustness", determinism_and_robustness},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    Checker ck;
    try {
      c.fn(ck);
    } catch (const std::exception& e) {
      ck.failures.push_back(std::string("unexpected exception: ") + e.what());
    }
    std::printf("%-42s %s\n", c.name, ck.failures.empty() ? "PASS" : "FAIL");
    for (const std::string& f : ck.failures)
      std::printf("    %s\n", f.c_str());
    if (!ck.failures.empty()) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
