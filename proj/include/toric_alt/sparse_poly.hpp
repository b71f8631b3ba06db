// SPDX-License-Identifier: Apache-2.0
//
// Sparse multivariate polynomials with exact rational coefficients, the
// workhorse behind polynomial automorphisms and their logarithms. Terms are
// kept in a map under graded lexicographic order, so iteration order (and
// hence printing and serialization) is deterministic.

#pragma once

#include "toric_alt/arith.hpp"

#include <map>
#include <string>
#include <vector>

namespace toric_alt {

struct GradedLexLess {
  bool operator()(const IVec& a, const IVec& b) const {
    Int da = 0, db = 0;
    for (const Int& x : a) da += x;
    for (const Int& x : b) db += x;
    if (da != db) return da < db;
    return lex_less(a, b);
  }
};

class SparsePoly {
 public:
  using TermMap = std::map<IVec, Rat, GradedLexLess>;

  SparsePoly() = default;
  explicit SparsePoly(std::size_t nvars) : nvars_(nvars) {}

  static SparsePoly constant(std::size_t nvars, const Rat& c) {
    SparsePoly p(nvars);
    if (c != 0) p.terms_[IVec(nvars, Int(0))] = c;
    return p;
  }

  static SparsePoly variable(std::size_t nvars, std::size_t v) {
    SparsePoly p(nvars);
    IVec m(nvars, Int(0));
    m[v] = 1;
    p.terms_[std::move(m)] = 1;
    return p;
  }

  static SparsePoly monomial(std::size_t nvars, const Rat& c, IVec exps) {
    SparsePoly p(nvars);
    if (c != 0) p.terms_[std::move(exps)] = c;
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool operator==(const SparsePoly& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
  }
  bool operator!=(const SparsePoly& o) const { return !(*this == o); }

  /// -1 for the zero polynomial.
  Int total_degree() const {
    Int d = -1;
    for (const auto& [m, c] : terms_) {
      Int t = 0;
      for (const Int& x : m) t += x;
      if (t > d) d = t;
    }
    return d;
  }

  void add_term(const IVec& exps, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
      terms_.emplace(exps, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  SparsePoly& operator+=(const SparsePoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  SparsePoly& operator-=(const SparsePoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) {
    a += b;
    return a;
  }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) {
    a -= b;
    return a;
  }
  SparsePoly operator-() const {
    SparsePoly r(nvars_);
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
  }

  SparsePoly& operator*=(const Rat& s) {
    if (s == 0) {
      terms_.clear();
    } else {
      for (auto& [m, c] : terms_) c *= s;
    }
    return *this;
  }
  friend SparsePoly operator*(SparsePoly p, const Rat& s) {
    p *= s;
    return p;
  }
  friend SparsePoly operator*(const Rat& s, SparsePoly p) {
    p *= s;
    return p;
  }

  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly r(a.nvars_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(add(ma, mb), ca * cb);
    return r;
  }

  SparsePoly diff(std::size_t v) const {
    SparsePoly r(nvars_);
    for (const auto& [m, c] : terms_) {
      if (m[v] == 0) continue;
      IVec e = m;
      e[v] -= 1;
      r.add_term(e, c * Rat(m[v]));
    }
    return r;
  }

  SparsePoly pow(unsigned long k) const {
    SparsePoly r = constant(nvars_, 1);
    SparsePoly base = *this;
    while (k > 0) {
      if (k & 1) r = r * base;
      base = base * base;
      k >>= 1;
    }
    return r;
  }

  /// Substitutes images[v] for variable v. Powers of each image are built
  /// incrementally and reused across terms.
  SparsePoly subst(const std::vector<SparsePoly>& images) const {
    if (images.size() != nvars_)
      throw internal_error("subst: wrong number of images");
    std::size_t out_vars = images.empty() ? nvars_ : images[0].nvars();
    // powers[v][d] = images[v]^d, filled on demand.
    std::vector<std::vector<SparsePoly>> powers(nvars_);
    for (std::size_t v = 0; v < nvars_; ++v)
      powers[v].push_back(constant(out_vars, 1));
    SparsePoly r(out_vars);
    for (const auto& [m, c] : terms_) {
      SparsePoly t = constant(out_vars, c);
      for (std::size_t v = 0; v < nvars_; ++v) {
        if (m[v] == 0) continue;
        unsigned long d = m[v].convert_to<unsigned long>();
        while (powers[v].size() <= d)
          powers[v].push_back(powers[v].back() * images[v]);
        t = t * powers[v][d];
      }
      r += t;
    }
    return r;
  }

  Rat eval(const std::vector<Rat>& point) const {
    if (point.size() != nvars_) throw internal_error("eval: wrong point size");
    Rat r = 0;
    for (const auto& [m, c] : terms_) {
      Rat t = c;
      for (std::size_t v = 0; v < nvars_; ++v) {
        unsigned long d = m[v].convert_to<unsigned long>();
        for (unsigned long q = 0; q < d; ++q) t *= point[v];
      }
      r += t;
    }
    return r;
  }

  /// Renders in the fixed variable names x1..xn, terms in graded lex order,
  /// e.g. "x1 + 2*x1*x2^3 - 1/2*x3".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
      Rat a = c;
      if (s.empty()) {
        if (a < 0) {
          s += "-";
          a = -a;
        }
      } else {
        s += a < 0 ? " - " : " + ";
        if (a < 0) a = -a;
      }
      std::string mono;
      for (std::size_t v = 0; v < nvars_; ++v) {
        if (m[v] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += "x" + std::to_string(v + 1);
        if (m[v] != 1) mono += "^" + m[v].str();
      }
      if (mono.empty()) {
        s += rat_to_string(a);
      } else {
        if (a != 1) s += rat_to_string(a) + "*";
        s += mono;
      }
    }
    return s;
  }

 private:
  std::size_t nvars_ = 0;
  TermMap terms_;
};

}  // namespace toric_alt
