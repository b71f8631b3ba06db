// SPDX-License-Identifier: Apache-2.0
//
// Polynomial vector fields and unipotent polynomial automorphisms of A^n,
// with exact exponential and logarithm.
//
// An automorphism is stored through its action on coordinate functions:
// images[i] is the pullback of x_{i+1}. Exponentials of strictly triangular
// nilpotent fields terminate after finitely many terms, and every field this
// library produces in its unipotent branch is of that shape; exp_field
// verifies the shape up front instead of looping forever on bad input.

#pragma once

#include "toric_alt/derivations.hpp"
#include "toric_alt/sparse_poly.hpp"

#include <cstddef>
#include <vector>

namespace toric_alt {

/// The field f[0] d/dx_1 + ... + f[n-1] d/dx_n.
using PolyField = std::vector<SparsePoly>;

inline PolyField zero_field(std::size_t n) {
  return PolyField(n, SparsePoly(n));
}

inline bool field_is_zero(const PolyField& f) {
  for (const SparsePoly& p : f)
    if (!p.is_zero()) return false;
  return true;
}

inline PolyField field_add(const PolyField& a, const PolyField& b) {
  PolyField r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

inline PolyField field_scale(const PolyField& a, const Rat& s) {
  PolyField r = a;
  for (SparsePoly& p : r) p *= s;
  return r;
}

inline PolyField field_negate(const PolyField& a) {
  return field_scale(a, Rat(-1));
}

/// Applies the derivation to a polynomial: sum_i f[i] * dp/dx_i.
inline SparsePoly apply_field(const PolyField& f, const SparsePoly& p) {
  SparsePoly r(p.nvars());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].is_zero()) continue;
    r += f[i] * p.diff(i);
  }
  return r;
}

/// Lie bracket of vector fields: [A,B](x_i) = A(B(x_i)) - B(A(x_i)).
inline PolyField bracket_fields(const PolyField& a, const PolyField& b) {
  PolyField r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = apply_field(a, b[i]) - apply_field(b, a[i]);
  return r;
}

/// Converts a sum of monomial fields on A^k into its polynomial form.
inline PolyField realize_field(std::size_t k, const FieldSum& terms) {
  PolyField f = zero_field(k);
  for (const MonomialField& t : terms)
    f[t.var] += SparsePoly::monomial(k, Rat(t.coeff), t.exponents);
  return f;
}

/// Checks that the field is strictly triangular in some variable order:
/// on the variables with nonzero component, the relation "component of i
/// involves variable j" must be acyclic (self-dependence included). Returns
/// a topological order of all variables (dependencies first); throws
/// input_error when no such order exists. The order is deterministic:
/// among ready vertices the smallest index is taken first.
inline std::vector<std::size_t> triangular_order(const PolyField& f) {
  const std::size_t n = f.size();
  std::vector<std::vector<bool>> dep(n, std::vector<bool>(n, false));
  std::vector<std::size_t> out_count(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (f[i].is_zero()) continue;
    for (const auto& [m, c] : f[i].terms())
      for (std::size_t j = 0; j < n; ++j)
        if (m[j] != 0 && !f[j].is_zero()) dep[i][j] = true;
    for (std::size_t j = 0; j < n; ++j)
      if (dep[i][j]) ++out_count[i];
  }
  // Kahn's algorithm, emitting dependency-free vertices first.
  std::vector<std::size_t> order;
  std::vector<bool> done(n, false);
  for (;;) {
    std::size_t pick = n;
    for (std::size_t i = 0; i < n; ++i)
      if (!done[i] && out_count[i] == 0) {
        pick = i;
        break;
      }
    if (pick == n) break;
    done[pick] = true;
    order.push_back(pick);
    for (std::size_t i = 0; i < n; ++i)
      if (!done[i] && dep[i][pick]) --out_count[i];
  }
  if (order.size() != n)
    throw input_error(
        "vector field is not triangular: cyclic variable dependence");
  return order;
}

// ---------------------------------------------------------------------------
// Automorphisms.
// ---------------------------------------------------------------------------

struct PolyAutomorphism {
  std::vector<SparsePoly> images;  // images[i] = pullback of x_{i+1}

  std::size_t nvars() const { return images.size(); }

  static PolyAutomorphism identity(std::size_t n) {
    PolyAutomorphism a;
    for (std::size_t i = 0; i < n; ++i)
      a.images.push_back(SparsePoly::variable(n, i));
    return a;
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < images.size(); ++i)
      if (images[i] != SparsePoly::variable(images.size(), i)) return false;
    return true;
  }

  bool operator==(const PolyAutomorphism& o) const {
    return images == o.images;
  }
};

/// Composition as maps: (a . b)(P) = a(b(P)). On pullbacks this substitutes
/// b's images into a's.
inline PolyAutomorphism compose(const PolyAutomorphism& a,
                                const PolyAutomorphism& b) {
  PolyAutomorphism r;
  r.images.reserve(a.images.size());
  for (const SparsePoly& p : a.images) r.images.push_back(p.subst(b.images));
  return r;
}

/// Group product matching the exponential: mul(exp A, exp B) = exp of the
/// Baker-Campbell-Hausdorff combination of A and B. As operators on
/// functions pullbacks compose contravariantly, so this is compose(b, a).
inline PolyAutomorphism mul(const PolyAutomorphism& a,
                            const PolyAutomorphism& b) {
  return compose(b, a);
}

/// exp of a strictly triangular nilpotent field: x_i is sent to
/// sum_m D^m(x_i) / m!, a finite sum. Throws input_error when the
/// triangularity check fails.
inline PolyAutomorphism exp_field(const PolyField& f) {
  triangular_order(f);
  const std::size_t n = f.size();
  PolyAutomorphism a;
  for (std::size_t i = 0; i < n; ++i) {
    SparsePoly acc = SparsePoly::variable(n, i);
    SparsePoly term = acc;
    for (Int m = 1;; ++m) {
      term = apply_field(f, term);
      if (term.is_zero()) break;
      term *= Rat(Int(1), m);
      acc += term;
    }
    a.images.push_back(std::move(acc));
  }
  return a;
}

/// log of a unipotent automorphism: with u(p) = p(a) - p,
///   log(a)(x_i) = sum_{m >= 1} (-1)^(m+1) u^m(x_i) / m.
/// The series terminates because u raises a filtration degree; a cap guards
/// against non-unipotent input.
inline PolyField log_auto(const PolyAutomorphism& a) {
  const std::size_t n = a.nvars();
  const int cap = 512;
  PolyField f(n);
  for (std::size_t i = 0; i < n; ++i) {
    SparsePoly w = a.images[i] - SparsePoly::variable(n, i);
    SparsePoly acc(n);
    int m = 1;
    while (!w.is_zero()) {
      if (m > cap)
        throw input_error("logarithm series does not terminate: "
                          "automorphism is not unipotent");
      acc += w * Rat(Int(m % 2 == 1 ? 1 : -1), Int(m));
      w = w.subst(a.images) - w;
      ++m;
    }
    f[i] = std::move(acc);
  }
  return f;
}

/// Inverse of a unipotent automorphism by fixed-point refinement: writing
/// a_i = x_i + h_i, the inverse images satisfy b_i = x_i - h_i(b), which
/// stabilizes after finitely many rounds exactly when a is unipotent.
inline PolyAutomorphism inverse(const PolyAutomorphism& a) {
  const std::size_t n = a.nvars();
  std::vector<SparsePoly> h(n);
  for (std::size_t i = 0; i < n; ++i)
    h[i] = a.images[i] - SparsePoly::variable(n, i);
  PolyAutomorphism b = PolyAutomorphism::identity(n);
  const int cap = 64 + static_cast<int>(n);
  for (int round = 0; round < cap; ++round) {
    PolyAutomorphism next;
    next.images.reserve(n);
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      SparsePoly img = SparsePoly::variable(n, i) - h[i].subst(b.images);
      if (img != b.images[i]) changed = true;
      next.images.push_back(std::move(img));
    }
    b = std::move(next);
    if (!changed) {
      if (!compose(a, b).is_identity() || !compose(b, a).is_identity())
        throw internal_error("inverse: verification failed");
      return b;
    }
  }
  throw input_error("inverse iteration does not stabilize: "
                    "automorphism is not unipotent");
}

/// Evaluates a group word in the given generators. Letters are 1-based:
/// +i means generator i-1, -i its inverse. Multiplication is mul (operator
/// order), applied left to right.
inline PolyAutomorphism word_eval(const std::vector<PolyAutomorphism>& gens,
                                  const std::vector<PolyAutomorphism>& invs,
                                  const std::vector<int>& word) {
  if (gens.empty()) throw internal_error("word_eval: no generators");
  PolyAutomorphism r = PolyAutomorphism::identity(gens[0].nvars());
  for (int letter : word) {
    if (letter == 0) throw internal_error("word_eval: zero letter");
    std::size_t idx = static_cast<std::size_t>(letter > 0 ? letter : -letter) - 1;
    if (idx >= gens.size()) throw internal_error("word_eval: letter out of range");
    r = mul(r, letter > 0 ? gens[idx] : invs[idx]);
  }
  return r;
}

}  // namespace toric_alt
