// SPDX-License-Identifier: Apache-2.0
//
// Shared helpers for the test suite: small literal builders and seeded
// random families of cones and root sets. Randomness goes through raw
// mt19937 draws with modulo so the streams are identical on every
// platform; seeds are fixed in the tests.

#pragma once

#include <toric_alt/alternative.hpp>

#include <initializer_list>
#include <random>
#include <vector>

namespace test_support {

using namespace toric_alt;

inline IVec iv(std::initializer_list<long> xs) {
  IVec v;
  for (long x : xs) v.push_back(Int(x));
  return v;
}

inline Cone make_cone(std::vector<IVec> rays) {
  Cone c;
  c.rank = static_cast<int>(rays.at(0).size());
  c.rays = std::move(rays);
  return c;
}

inline unsigned pick(std::mt19937& rng, unsigned n) { return rng() % n; }

/// Uniformly-ish random integer in [lo, hi].
inline long pick_range(std::mt19937& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
}

/// A unimodular matrix built from elementary row operations, tracked
/// together with its inverse transpose so roots can be moved between the
/// standard cone and its image.
struct UniPair {
  Mat u;   // columns are the transformed cone's rays
  Mat vt;  // inverse transpose of u: maps standard roots to new roots
};

inline UniPair random_unimodular(std::mt19937& rng, std::size_t n,
                                 int ops = 6, long cmax = 2) {
  UniPair p{Mat::identity(n), Mat::identity(n)};
  for (int o = 0; o < ops; ++o) {
    std::size_t i = pick(rng, static_cast<unsigned>(n));
    std::size_t j = pick(rng, static_cast<unsigned>(n));
    if (i == j) continue;
    long c = pick_range(rng, -cmax, cmax);
    if (c == 0) continue;
    // u <- E_ij(c) u, vt <- E_ji(-c) vt keeps vt = u^(-T).
    for (std::size_t t = 0; t < n; ++t) p.u.at(i, t) += Int(c) * p.u.at(j, t);
    for (std::size_t t = 0; t < n; ++t) p.vt.at(j, t) -= Int(c) * p.vt.at(i, t);
  }
  return p;
}

/// The image of the standard (octant) cone under u: rays are u's columns.
inline Cone cone_from_columns(const Mat& u) {
  Cone c;
  c.rank = static_cast<int>(u.rows);
  for (std::size_t i = 0; i < u.cols; ++i) {
    IVec ray(u.rows);
    for (std::size_t t = 0; t < u.rows; ++t) ray[t] = u.at(t, i);
    c.rays.push_back(std::move(ray));
  }
  return c;
}

/// Standard-cone root at ray j: -unit_j plus nonnegative coordinates
/// elsewhere. With `lower_only` the support of the positive part stays on
/// rays with smaller index, which keeps the whole family acyclic.
inline IVec octant_root(std::mt19937& rng, std::size_t n, std::size_t j,
                        long cmax, bool lower_only) {
  IVec e(n, Int(0));
  e[j] = -1;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == j) continue;
    if (lower_only && i > j) continue;
    e[i] = Int(pick_range(rng, 0, cmax));
  }
  return e;
}

struct RandomInstance {
  Cone cone;
  std::vector<std::vector<IVec>> roots;
  UniPair up;  // the transform the instance was built from
};

/// A random instance with acyclic interaction: a unimodular image of the
/// standard cone with roots whose positive pairings only point to rays of
/// smaller index.
inline RandomInstance random_acyclic_instance(std::mt19937& rng,
                                              std::size_t n) {
  RandomInstance inst;
  inst.up = random_unimodular(rng, n);
  inst.cone = cone_from_columns(inst.up.u);
  inst.roots.assign(n, {});
  std::size_t count = 1 + pick(rng, static_cast<unsigned>(n + 1));
  for (std::size_t r = 0; r < count; ++r) {
    std::size_t j = pick(rng, static_cast<unsigned>(n));
    IVec e = octant_root(rng, n, j, 2, true);
    inst.roots[j].push_back(inst.up.vt * e);
  }
  return inst;
}

/// A random instance guaranteed to contain an obstructing pair: a closed
/// acyclic family plus a planted pair of roots whose pairings are positive
/// both ways. Because the base family alone is closed without obstruction,
/// any obstructing pair the closure finds must descend from a planted
/// root. The planted roots are returned through the out parameters.
inline RandomInstance random_planted_instance(std::mt19937& rng,
                                              std::size_t n, RootKey& planted1,
                                              RootKey& planted2) {
  RandomInstance base = random_acyclic_instance(rng, n);
  ClosureResult cl = close_roots(base.cone, base.roots, 5000);

  RandomInstance inst;
  inst.cone = base.cone;
  inst.up = base.up;
  inst.roots.assign(n, {});
  for (std::size_t i = 0; i < n; ++i)
    inst.roots[i].assign(cl.sets[i].begin(), cl.sets[i].end());

  // Plant e at ray i and f at ray j with <ray_j,e> > 0 and <ray_i,f> > 0,
  // written in standard coordinates and moved by the same transform.
  std::size_t i = pick(rng, static_cast<unsigned>(n));
  std::size_t j = pick(rng, static_cast<unsigned>(n - 1));
  if (j >= i) ++j;
  IVec e(n, Int(0)), f(n, Int(0));
  e[i] = -1;
  e[j] = Int(pick_range(rng, 1, 2));
  f[j] = -1;
  f[i] = Int(pick_range(rng, 1, 2));
  IVec et = inst.up.vt * e;
  IVec ft = inst.up.vt * f;
  inst.roots[i].push_back(et);
  inst.roots[j].push_back(ft);
  planted1 = RootKey{i, et};
  planted2 = RootKey{j, ft};
  return inst;
}

}  // namespace test_support
