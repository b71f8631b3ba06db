// SPDX-License-Identifier: Apache-2.0
//
// The finite-dimensional nilpotent Lie algebra spanned by a closed family
// of root derivations, together with exact series identities on it:
// Baker-Campbell-Hausdorff products (both through automorphisms and through
// the Dynkin expansion) and the Zassenhaus splitting of an exponential of a
// sum into a product of exponentials.
//
// Elements are coordinate vectors over the structure-constant basis, so all
// Lie computation is linear algebra over the rationals; the automorphism
// route goes through the faithful realization on the quotient presentation.

#pragma once

#include "toric_alt/closure.hpp"
#include "toric_alt/polyauto.hpp"

#include <map>
#include <utility>
#include <vector>

namespace toric_alt {

/// Coordinates over StructureConstants::basis.
using LieElement = std::vector<Rat>;

struct LieAlgebra {
  Cone cone;
  StructureConstants sc;
  std::size_t nilpotency_class = 0;
  // (acted-on coordinate, lifted exponent vector) -> basis index
  std::map<std::pair<std::size_t, IVec>, std::size_t> lift_index;

  std::size_t dim() const { return sc.basis.size(); }
};

inline LieAlgebra make_lie_algebra(const ClosureResult& cl) {
  LieAlgebra alg;
  alg.cone = cl.cone;
  alg.sc = structure_constants(cl);
  alg.nilpotency_class = lower_central_series(alg.sc).nilpotency_class;
  for (std::size_t t = 0; t < alg.sc.basis.size(); ++t) {
    const RootKey& rk = alg.sc.basis[t];
    MonomialField mf = lift_derivation(cl.cone, rk.ray, rk.e);
    alg.lift_index[{mf.var, mf.exponents}] = t;
  }
  return alg;
}

inline LieElement lie_zero(const LieAlgebra& alg) {
  return LieElement(alg.dim(), Rat(0));
}

inline LieElement lie_basis(const LieAlgebra& alg, std::size_t t) {
  LieElement v = lie_zero(alg);
  v[t] = 1;
  return v;
}

inline bool lie_is_zero(const LieElement& v) {
  for (const Rat& c : v)
    if (c != 0) return false;
  return true;
}

inline LieElement lie_add(const LieElement& a, const LieElement& b) {
  LieElement r = a;
  for (std::size_t t = 0; t < r.size(); ++t) r[t] += b[t];
  return r;
}

inline LieElement lie_scale(const LieElement& a, const Rat& s) {
  LieElement r = a;
  for (Rat& c : r) c *= s;
  return r;
}

inline LieElement lie_bracket(const LieAlgebra& alg, const LieElement& a,
                              const LieElement& b) {
  LieElement r = lie_zero(alg);
  for (const auto& [st, tc] : alg.sc.brackets) {
    Rat w = a[st.first] * b[st.second] - a[st.second] * b[st.first];
    if (w != 0) r[tc.first] += w * Rat(tc.second);
  }
  return r;
}

/// The element as a polynomial vector field on the quotient presentation.
inline PolyField realize(const LieAlgebra& alg, const LieElement& v) {
  const std::size_t k = alg.cone.num_rays();
  PolyField f = zero_field(k);
  for (std::size_t t = 0; t < alg.dim(); ++t) {
    if (v[t] == 0) continue;
    MonomialField mf = lift_derivation(alg.cone, alg.sc.basis[t].ray,
                                       alg.sc.basis[t].e);
    f[mf.var] += SparsePoly::monomial(k, v[t] * Rat(mf.coeff), mf.exponents);
  }
  return f;
}

/// Inverse of realize. Throws internal_error when the field has a term
/// outside the realized basis; realize is injective because the rays span
/// the ambient space, so round-tripping is exact.
inline LieElement decompose(const LieAlgebra& alg, const PolyField& f) {
  LieElement v = lie_zero(alg);
  for (std::size_t i = 0; i < f.size(); ++i)
    for (const auto& [m, c] : f[i].terms()) {
      auto it = alg.lift_index.find({i, m});
      if (it == alg.lift_index.end())
        throw internal_error("decompose: field term outside the algebra");
      v[it->second] = c;
    }
  return v;
}

inline PolyAutomorphism lie_exp(const LieAlgebra& alg, const LieElement& v) {
  return exp_field(realize(alg, v));
}

/// log(exp(a) exp(b)) through the realization: multiply the exponentials as
/// automorphisms and decompose the logarithm.
inline LieElement bch(const LieAlgebra& alg, const LieElement& a,
                      const LieElement& b) {
  PolyAutomorphism pa = lie_exp(alg, a);
  PolyAutomorphism pb = lie_exp(alg, b);
  return decompose(alg, log_auto(mul(pa, pb)));
}

namespace detail {

/// All block sequences ((p_1,q_1),...,(p_r,q_r)), p_i + q_i >= 1, of total
/// weight <= bound, visited in a fixed recursive order.
template <typename Visit>
void walk_dynkin_blocks(std::size_t bound,
                        std::vector<std::pair<std::size_t, std::size_t>>& blocks,
                        std::size_t weight, const Visit& visit) {
  if (!blocks.empty()) visit(blocks, weight);
  if (weight >= bound) return;
  for (std::size_t s = 1; weight + s <= bound; ++s)
    for (std::size_t p = 0; p <= s; ++p) {
      blocks.push_back({p, s - p});
      walk_dynkin_blocks(bound, blocks, weight + s, visit);
      blocks.pop_back();
    }
}

inline Int factorial(std::size_t n) {
  Int r = 1;
  for (std::size_t i = 2; i <= n; ++i) r *= Int(i);
  return r;
}

}  // namespace detail

/// The Dynkin expansion of log(exp(a) exp(b)), truncated at the nilpotency
/// class (higher terms vanish):
///   sum over r >= 1 and blocks (p_i,q_i) with p_i + q_i >= 1 of
///   (-1)^(r-1)/r * W / (|W| * prod p_i! q_i!),
/// where W is the right-nested bracketing of a^(p_1) b^(q_1) ... a^(p_r)
/// b^(q_r) and |W| its length. Agreement with bch() is an independent check
/// of the whole exponential/logarithm pipeline.
inline LieElement dynkin_bch(const LieAlgebra& alg, const LieElement& a,
                             const LieElement& b) {
  LieElement acc = lie_zero(alg);
  std::size_t bound = alg.nilpotency_class;
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  detail::walk_dynkin_blocks(
      bound, blocks, 0,
      [&](const std::vector<std::pair<std::size_t, std::size_t>>& bl,
          std::size_t weight) {
        // Letters of the word, a = true, b = false.
        std::vector<bool> word;
        for (const auto& [p, q] : bl) {
          word.insert(word.end(), p, true);
          word.insert(word.end(), q, false);
        }
        // Right-nested bracket; zero whenever the innermost pair repeats.
        LieElement w = word.back() ? a : b;
        for (std::size_t t = word.size() - 1; t-- > 0;)
          w = lie_bracket(alg, word[t] ? a : b, w);
        if (lie_is_zero(w)) return;
        Int denom = Int(bl.size()) * Int(weight);
        for (const auto& [p, q] : bl)
          denom *= detail::factorial(p) * detail::factorial(q);
        Rat coeff = Rat(Int(bl.size() % 2 == 1 ? 1 : -1), denom);
        acc = lie_add(acc, lie_scale(w, coeff));
      });
  return acc;
}

namespace detail {

/// Exact Gaussian elimination solve of A X = B for square invertible A.
inline std::vector<std::vector<Rat>> solve_square(
    std::vector<std::vector<Rat>> a, std::vector<std::vector<Rat>> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw internal_error("solve_square: singular matrix");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    Rat inv = Rat(1) / a[col][col];
    for (Rat& x : a[col]) x *= inv;
    for (Rat& x : b[col]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rat f = a[r][col];
      for (std::size_t c = 0; c < n; ++c) a[r][c] -= f * a[col][c];
      for (std::size_t c = 0; c < b[r].size(); ++c) b[r][c] -= f * b[col][c];
    }
  }
  return b;
}

}  // namespace detail

struct ZassenhausSplit {
  // exp(sum of parts) = exp(parts[0]) ... exp(parts[back]) *
  //                     exp(tail[0]) exp(tail[1]) ...
  // tail[m-2] collects the order-m correction, m = 2..nilpotency class.
  std::vector<LieElement> tail;
};

/// Splits exp(a_1 + ... + a_nu) into the ordered product of the exp(a_i)
/// followed by higher-order correction factors. The corrections are found
/// order by order: with psi_2..psi_(m-1) known, the defect
///   log( Q_m(t)^(-1) exp(t * sum a_i) ),
///   Q_m(t) = exp(t a_1)...exp(t a_nu) exp(t^2 psi_2)...exp(t^(m-1) psi_(m-1)),
/// is a polynomial in t with terms only in degrees m..class; sampling it at
/// t = 1, 2, ... and solving the Vandermonde system isolates the degree-m
/// coefficient, which is psi_m. The final product identity is verified
/// exactly before returning.
inline ZassenhausSplit zassenhaus_split(const LieAlgebra& alg,
                                        const std::vector<LieElement>& parts) {
  if (parts.empty()) throw internal_error("zassenhaus_split: no parts");
  const std::size_t n_class = alg.nilpotency_class == 0 ? 1
                                                        : alg.nilpotency_class;
  LieElement total = lie_zero(alg);
  for (const LieElement& p : parts) total = lie_add(total, p);

  ZassenhausSplit zs;
  for (std::size_t m = 2; m <= n_class && parts.size() > 1; ++m) {
    const std::size_t points = n_class - m + 1;
    // Sample the defect at t = 1..points.
    std::vector<std::vector<Rat>> vmat(points, std::vector<Rat>(points));
    std::vector<std::vector<Rat>> rhs(points);
    for (std::size_t s = 0; s < points; ++s) {
      Rat t = Rat(Int(s + 1));
      PolyAutomorphism q =
          PolyAutomorphism::identity(alg.cone.num_rays());
      for (const LieElement& p : parts)
        q = mul(q, lie_exp(alg, lie_scale(p, t)));
      for (std::size_t j = 0; j < zs.tail.size(); ++j) {
        Rat tj = 1;
        for (std::size_t u = 0; u < j + 2; ++u) tj *= t;
        q = mul(q, lie_exp(alg, lie_scale(zs.tail[j], tj)));
      }
      PolyAutomorphism full = lie_exp(alg, lie_scale(total, t));
      LieElement defect = decompose(alg, log_auto(mul(inverse(q), full)));
      rhs[s] = defect;
      Rat tp = 1;
      for (std::size_t u = 0; u < m; ++u) tp *= t;
      for (std::size_t d = 0; d < points; ++d) {
        vmat[s][d] = tp;
        tp *= t;
      }
    }
    std::vector<std::vector<Rat>> sol = detail::solve_square(vmat, rhs);
    zs.tail.push_back(sol[0]);
  }
  while (!zs.tail.empty() && lie_is_zero(zs.tail.back())) zs.tail.pop_back();

  // Exact verification of the product identity.
  PolyAutomorphism prod = PolyAutomorphism::identity(alg.cone.num_rays());
  for (const LieElement& p : parts) prod = mul(prod, lie_exp(alg, p));
  for (const LieElement& p : zs.tail) prod = mul(prod, lie_exp(alg, p));
  if (!(prod == lie_exp(alg, total)))
    throw internal_error("zassenhaus_split: product identity failed");
  return zs;
}

}  // namespace toric_alt
