// SPDX-License-Identifier: Apache-2.0
//
// Homogeneous locally nilpotent derivations of the coordinate ring of a
// toric affine variety, in two pictures:
//
//  * downstairs, on the character lattice: a derivation is determined by a
//    lattice direction rho and a degree e, acting on a character chi^m by
//      chi^m  |->  <rho, m> chi^(m + e);
//  * upstairs, on the quotient presentation A^k: a monomial coefficient
//    times a single coordinate derivative, x^a d/dx_j.
//
// Both brackets are computed exactly over arbitrary-precision integers.

#pragma once

#include "toric_alt/roots.hpp"

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

namespace toric_alt {

// ---------------------------------------------------------------------------
// Downstairs picture.
// ---------------------------------------------------------------------------

/// coeff * D_{rho,e} in canonical form: rho primitive with positive leading
/// entry, or the unique zero element (coeff = 0, rho = e = 0).
struct HomogeneousDerivation {
  Int coeff = 0;
  IVec rho;
  IVec e;

  bool is_zero() const { return coeff == 0; }

  bool operator==(const HomogeneousDerivation& o) const {
    return coeff == o.coeff && rho == o.rho && e == o.e;
  }
};

inline HomogeneousDerivation make_derivation(Int coeff, IVec rho, IVec e) {
  std::size_t n = rho.size();
  if (coeff == 0 || is_zero(rho))
    return HomogeneousDerivation{Int(0), IVec(n, Int(0)), IVec(n, Int(0))};
  Int g = vec_gcd(rho);
  if (g > 1) {
    for (Int& c : rho) c /= g;
    coeff *= g;
  }
  for (const Int& c : rho) {
    if (c == 0) continue;
    if (c < 0) {
      for (Int& x : rho) x = -x;
      coeff = -coeff;
    }
    break;
  }
  return HomogeneousDerivation{std::move(coeff), std::move(rho), std::move(e)};
}

/// The derivation attached to a root e distinguished at ray j.
inline HomogeneousDerivation root_derivation(const Cone& cone, std::size_t j,
                                             const IVec& e) {
  if (!is_root_at(cone, j, e))
    throw input_error("root_derivation: vector is not a root at the given ray");
  return make_derivation(Int(1), cone.rays[j], e);
}

/// Applies the derivation to the character chi^m; the image is the single
/// term scalar * chi^(m + e), returned as (scalar, exponent).
inline std::pair<Int, IVec> apply_to_character(const HomogeneousDerivation& d,
                                               const IVec& m) {
  if (d.is_zero()) return {Int(0), m};
  return {d.coeff * dot(d.rho, m), add(m, d.e)};
}

/// Lie bracket. With c = <rho_2, e_1> and d = <rho_1, e_2>,
///   [D_{rho_1,e_1}, D_{rho_2,e_2}] = D_{d rho_2 - c rho_1, e_1 + e_2}.
inline HomogeneousDerivation bracket(const HomogeneousDerivation& a,
                                     const HomogeneousDerivation& b) {
  if (a.is_zero() || b.is_zero()) return make_derivation(Int(0), a.rho, a.e);
  Int c = dot(b.rho, a.e);
  Int d = dot(a.rho, b.e);
  IVec rho(a.rho.size());
  for (std::size_t t = 0; t < rho.size(); ++t)
    rho[t] = d * b.rho[t] - c * a.rho[t];
  return make_derivation(a.coeff * b.coeff, std::move(rho), add(a.e, b.e));
}

// ---------------------------------------------------------------------------
// Upstairs picture: monomial vector fields on the quotient presentation.
// ---------------------------------------------------------------------------

/// coeff * x^exponents * d/dx_var on A^k.
struct MonomialField {
  Int coeff = 0;
  IVec exponents;
  std::size_t var = 0;

  bool operator==(const MonomialField& o) const {
    return coeff == o.coeff && exponents == o.exponents && var == o.var;
  }
};

/// A finite sum of monomial fields in canonical form: terms sorted by
/// (var, exponents) with like terms combined and zero terms dropped.
using FieldSum = std::vector<MonomialField>;

inline FieldSum normalize(FieldSum terms) {
  std::sort(terms.begin(), terms.end(),
            [](const MonomialField& a, const MonomialField& b) {
              if (a.var != b.var) return a.var < b.var;
              return lex_less(a.exponents, b.exponents);
            });
  FieldSum out;
  for (MonomialField& t : terms) {
    if (t.coeff == 0) continue;
    if (!out.empty() && out.back().var == t.var &&
        out.back().exponents == t.exponents) {
      out.back().coeff += t.coeff;
      if (out.back().coeff == 0) out.pop_back();
    } else {
      out.push_back(std::move(t));
    }
  }
  return out;
}

/// Lift of the derivation D_{ray_t, f} to A^k: the monomial field
/// x^(P f + unit_t) d/dx_t, where P f is the vector of ray pairings of f.
/// Defined whenever those exponents are nonnegative; roots always qualify,
/// as do the summands of a bracket of two lifted roots.
inline MonomialField lift_derivation(const Cone& cone, std::size_t t,
                                     const IVec& f) {
  MonomialField mf;
  mf.coeff = 1;
  mf.var = t;
  mf.exponents.resize(cone.num_rays());
  for (std::size_t i = 0; i < cone.num_rays(); ++i)
    mf.exponents[i] = cone.pair(i, f);
  mf.exponents[t] += 1;
  for (const Int& c : mf.exponents)
    if (c < 0)
      throw input_error("lift_derivation: negative exponent in lifted field");
  return mf;
}

/// Bracket of two monomial fields, expanded exactly:
///   [c1 x^a d/dx_p, c2 x^b d/dx_q]
///     = c1 c2 (b_p x^(a+b-unit_p) d/dx_q - a_q x^(a+b-unit_q) d/dx_p).
inline FieldSum field_bracket(const MonomialField& f, const MonomialField& g) {
  FieldSum out;
  IVec sum = add(f.exponents, g.exponents);
  if (g.exponents[f.var] != 0) {
    MonomialField t;
    t.coeff = f.coeff * g.coeff * g.exponents[f.var];
    t.exponents = sum;
    t.exponents[f.var] -= 1;
    t.var = g.var;
    out.push_back(std::move(t));
  }
  if (f.exponents[g.var] != 0) {
    MonomialField t;
    t.coeff = -f.coeff * g.coeff * f.exponents[g.var];
    t.exponents = sum;
    t.exponents[g.var] -= 1;
    t.var = f.var;
    out.push_back(std::move(t));
  }
  return normalize(std::move(out));
}

/// Degree of a monomial field in the class group: the class of its
/// exponent vector minus the unit vector of the acted-on coordinate.
/// A field descends to the quotient exactly when this class vanishes.
inline bool is_cox_invariant(const ClassGroup& cg, const MonomialField& f) {
  IVec deg = f.exponents;
  deg[f.var] -= 1;
  return class_is_zero(cg, deg);
}

}  // namespace toric_alt
