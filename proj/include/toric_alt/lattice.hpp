// SPDX-License-Identifier: Apache-2.0
//
// Full-dimensional lattice cones given by their extremal ray generators,
// together with the divisor class group of the associated affine variety.
//
// A cone is stored as the list of primitive vectors on its extremal rays in
// a fixed basis of the ambient lattice Z^n. Validation checks exactly the
// properties the rest of the library relies on; everything downstream may
// assume a validated cone.

#pragma once

#include "toric_alt/arith.hpp"

#include <string>
#include <vector>

namespace toric_alt {

struct Cone {
  int rank = 0;              // n, the ambient lattice rank
  std::vector<IVec> rays;    // k primitive extremal generators, each length n

  std::size_t num_rays() const { return rays.size(); }

  /// Pairing of ray i against a dual-lattice vector e.
  Int pair(std::size_t i, const IVec& e) const { return dot(rays[i], e); }
};

struct ConeCheck {
  std::string name;   // "nonzero" | "primitive" | "distinct" | "extremal" |
                      // "full-dimensional" | "pointed"
  bool pass = false;
  std::string detail; // offending ray indices (1-based) when failing
};

struct ValidationReport {
  bool ok = false;
  std::vector<ConeCheck> checks;
};

namespace detail {

inline std::string ray_list(const std::vector<std::size_t>& idx) {
  std::string s;
  for (std::size_t i : idx) {
    if (!s.empty()) s += ", ";
    s += "ray " + std::to_string(i + 1);
  }
  return s;
}

/// Is `target` a nonnegative rational combination of `gens`?
inline bool in_cone_of(const std::vector<IVec>& gens, const IVec& target,
                       std::size_t n) {
  if (gens.empty()) return is_zero(target);
  std::vector<std::vector<Rat>> rows(n, std::vector<Rat>(gens.size()));
  std::vector<Rat> b(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t j = 0; j < gens.size(); ++j) rows[r][j] = Rat(gens[j][r]);
    b[r] = Rat(target[r]);
  }
  return nonnegative_solution_exists(rows, b);
}

}  // namespace detail

/// Checks that the rays describe a full-dimensional pointed cone: nonzero,
/// primitive, pairwise distinct, extremal (no ray lies in the cone of the
/// others), spanning Q^n, and with trivial lineality space.
inline ValidationReport validate_cone(const Cone& cone) {
  ValidationReport rep;
  const std::size_t k = cone.num_rays();
  const std::size_t n = static_cast<std::size_t>(cone.rank);

  if (cone.rank <= 0) throw input_error("cone rank must be positive");
  for (const IVec& r : cone.rays)
    if (r.size() != n) throw input_error("ray length does not match cone rank");

  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < k; ++i)
    if (is_zero(cone.rays[i])) bad.push_back(i);
  rep.checks.push_back({"nonzero", bad.empty(), detail::ray_list(bad)});

  bad.clear();
  for (std::size_t i = 0; i < k; ++i)
    if (!is_zero(cone.rays[i]) && vec_gcd(cone.rays[i]) != 1) bad.push_back(i);
  rep.checks.push_back({"primitive", bad.empty(), detail::ray_list(bad)});

  bad.clear();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (cone.rays[i] == cone.rays[j]) {
        bad.push_back(i);
        bad.push_back(j);
      }
  rep.checks.push_back({"distinct", bad.empty(), detail::ray_list(bad)});

  bad.clear();
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<IVec> others;
    for (std::size_t j = 0; j < k; ++j)
      if (j != i) others.push_back(cone.rays[j]);
    if (detail::in_cone_of(others, cone.rays[i], n)) bad.push_back(i);
  }
  rep.checks.push_back({"extremal", bad.empty(), detail::ray_list(bad)});

  Mat m(k, n);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = cone.rays[i][j];
  bool full_dim = rank_over_q(m) == n;
  rep.checks.push_back({"full-dimensional", full_dim,
                        full_dim ? "" : "rays do not span Q^" + std::to_string(n)});

  // Pointedness: no nonzero nonnegative combination of the rays vanishes.
  // Feasibility of { sum lambda_i ray_i = 0, sum lambda_i = 1, lambda >= 0 }.
  bool pointed = true;
  if (k > 0) {
    std::vector<std::vector<Rat>> rows(n + 1, std::vector<Rat>(k));
    std::vector<Rat> b(n + 1, Rat(0));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t j = 0; j < k; ++j) rows[r][j] = Rat(cone.rays[j][r]);
    for (std::size_t j = 0; j < k; ++j) rows[n][j] = 1;
    b[n] = 1;
    pointed = !nonnegative_solution_exists(rows, b);
  }
  rep.checks.push_back({"pointed", pointed,
                        pointed ? "" : "cone contains a line"});

  rep.ok = true;
  for (const ConeCheck& c : rep.checks) rep.ok = rep.ok && c.pass;
  return rep;
}

// ---------------------------------------------------------------------------
// Divisor class group Cl = Z^k / im(P), where P maps a dual-lattice vector e
// to its pairing vector (<ray_1, e>, ..., <ray_k, e>). Computed once per
// cone via the Smith normal form of the ray matrix.
// ---------------------------------------------------------------------------

struct ClassGroup {
  Mat u;                        // k x k unimodular change of basis on Z^k
  std::vector<Int> moduli;      // per-coordinate: m > 0 means Z/m, 0 means Z
  std::vector<Int> invariant_factors;  // the moduli > 1, in chain order
  std::size_t free_rank = 0;
};

inline ClassGroup class_group(const Cone& cone) {
  const std::size_t k = cone.num_rays();
  const std::size_t n = static_cast<std::size_t>(cone.rank);
  Mat m(k, n);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = cone.rays[i][j];
  SmithResult snf = smith_normal_form(m);

  ClassGroup cg;
  cg.u = snf.u;
  cg.moduli.assign(k, Int(0));
  for (std::size_t t = 0; t < std::min(k, n); ++t) cg.moduli[t] = snf.d.at(t, t);
  for (const Int& d : cg.moduli) {
    if (d > 1) cg.invariant_factors.push_back(d);
    if (d == 0) ++cg.free_rank;
  }
  return cg;
}

/// Image of v in Cl, as reduced coordinates: entry t lies in [0, m_t) when
/// m_t > 0 (entries with m_t == 1 are identically zero) and is a free
/// integer when m_t == 0.
inline IVec divisor_class(const ClassGroup& cg, const IVec& v) {
  IVec w = cg.u * v;
  for (std::size_t t = 0; t < w.size(); ++t) {
    if (cg.moduli[t] > 0) {
      w[t] %= cg.moduli[t];
      if (w[t] < 0) w[t] += cg.moduli[t];
    }
  }
  return w;
}

inline bool class_is_zero(const ClassGroup& cg, const IVec& v) {
  return is_zero(divisor_class(cg, v));
}

/// Human-readable shape of the group, e.g. "Z^2 + Z/2 + Z/4" or "trivial".
inline std::string class_group_shape(const ClassGroup& cg) {
  std::string s;
  if (cg.free_rank > 0) s = "Z^" + std::to_string(cg.free_rank);
  for (const Int& d : cg.invariant_factors) {
    if (!s.empty()) s += " + ";
    s += "Z/" + d.str();
  }
  return s.empty() ? "trivial" : s;
}

}  // namespace toric_alt
