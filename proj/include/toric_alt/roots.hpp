// SPDX-License-Identifier: Apache-2.0
//
// Roots of a cone: dual-lattice vectors pairing to -1 with one distinguished
// ray and nonnegatively with every other ray. Each root indexes a locally
// nilpotent derivation of the coordinate ring (see derivations.hpp); here we
// only handle the combinatorics: membership tests, bounded enumeration, and
// the lift of a root to exponent data on the canonical quotient presentation.

#pragma once

#include "toric_alt/lattice.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace toric_alt {

/// True when <ray_i, e> >= 0 for all i, i.e. the monomial with exponent e is
/// a regular function on the variety of the cone.
inline bool is_in_dual_cone(const Cone& cone, const IVec& e) {
  for (std::size_t i = 0; i < cone.num_rays(); ++i)
    if (cone.pair(i, e) < 0) return false;
  return true;
}

/// True when e is a root distinguished at ray j: <ray_j, e> = -1 and
/// <ray_i, e> >= 0 for every other ray i.
inline bool is_root_at(const Cone& cone, std::size_t j, const IVec& e) {
  if (cone.pair(j, e) != -1) return false;
  for (std::size_t i = 0; i < cone.num_rays(); ++i) {
    if (i == j) continue;
    if (cone.pair(i, e) < 0) return false;
  }
  return true;
}

/// Returns the distinguished ray index if e is a root of the cone. A root
/// determines its ray: the unique ray pairing with e to -1.
inline std::optional<std::size_t> root_ray(const Cone& cone, const IVec& e) {
  std::optional<std::size_t> found;
  for (std::size_t i = 0; i < cone.num_rays(); ++i) {
    Int p = cone.pair(i, e);
    if (p == -1) {
      if (found) return std::nullopt;  // two rays pair to -1: not a root
      found = i;
    } else if (p < 0) {
      return std::nullopt;
    }
  }
  return found;
}

/// All roots e with max-norm coordinates in [-bound, bound], grouped by
/// distinguished ray, each group in lexicographic order. Enumeration walks
/// the coordinate box in lex order, so the output is deterministic.
inline std::vector<std::vector<IVec>> enumerate_roots(const Cone& cone,
                                                      const Int& bound) {
  if (bound < 0) throw input_error("root enumeration bound must be >= 0");
  const std::size_t n = static_cast<std::size_t>(cone.rank);
  std::vector<std::vector<IVec>> groups(cone.num_rays());
  IVec e(n, -bound);
  for (;;) {
    if (std::optional<std::size_t> j = root_ray(cone, e)) groups[*j].push_back(e);
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (e[pos] < bound) {
        ++e[pos];
        for (std::size_t q = pos + 1; q < n; ++q) e[q] = -bound;
        break;
      }
      if (pos == 0) return groups;
    }
  }
}

// ---------------------------------------------------------------------------
// Lift to the quotient presentation. The variety of a cone with rays
// ray_1..ray_k is the quotient of an affine chart of A^k by the dual of the
// class group; a root e distinguished at ray j lifts to the exponent vector
//   ehat = (<ray_1, e>, ..., <ray_k, e>)
// with ehat[j] = -1 and all other entries >= 0. The lifted derivation is
//   x^(ehat + unit_j) * d/dx_j,
// a monomial times a coordinate derivative on A^k (see derivations.hpp).
// ---------------------------------------------------------------------------

struct CoxLift {
  std::size_t ray = 0;  // j, the distinguished ray / acted-on coordinate
  IVec pairings;        // ehat, length k, entry j equal to -1
};

inline CoxLift lift_root(const Cone& cone, std::size_t j, const IVec& e) {
  if (!is_root_at(cone, j, e))
    throw input_error("lift_root: vector is not a root at the given ray");
  CoxLift lift;
  lift.ray = j;
  lift.pairings.resize(cone.num_rays());
  for (std::size_t i = 0; i < cone.num_rays(); ++i)
    lift.pairings[i] = cone.pair(i, e);
  return lift;
}

}  // namespace toric_alt
