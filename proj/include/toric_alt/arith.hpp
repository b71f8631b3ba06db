// SPDX-License-Identifier: Apache-2.0
//
// Exact integer and rational arithmetic used throughout the library, plus
// small dense integer matrices (Smith normal form, rank) and an exact
// rational feasibility solver for cone membership questions.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace toric_alt {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Raised when user-supplied data is malformed or violates a precondition
/// the caller is responsible for (maps to CLI exit code 2).
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when an internal consistency check fails; these indicate a bug or
/// a resource cap, never bad user input (maps to CLI exit code 3).
struct internal_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using IVec = std::vector<Int>;

inline Int dot(const IVec& a, const IVec& b) {
  if (a.size() != b.size()) throw internal_error("dot: dimension mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline IVec add(const IVec& a, const IVec& b) {
  if (a.size() != b.size()) throw internal_error("add: dimension mismatch");
  IVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline bool is_zero(const IVec& a) {
  return std::all_of(a.begin(), a.end(), [](const Int& x) { return x == 0; });
}

/// Strict lexicographic order on integer vectors (shorter vectors first).
inline bool lex_less(const IVec& a, const IVec& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

struct LexLess {
  bool operator()(const IVec& a, const IVec& b) const { return lex_less(a, b); }
};

inline Int vec_gcd(const IVec& a) {
  Int g = 0;
  for (const Int& x : a) g = boost::multiprecision::gcd(g, x);
  return g;  // 0 for the zero vector
}

// ---------------------------------------------------------------------------
// Rational parsing and printing. The wire format is "p/q" in lowest terms
// with positive denominator; the "/q" part is omitted when q == 1.
// ---------------------------------------------------------------------------

inline std::string rat_to_string(const Rat& r) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(r);
  if (boost::multiprecision::denominator(r) != 1)
    os << '/' << boost::multiprecision::denominator(r);
  return os.str();
}

inline Rat rat_from_string(const std::string& s) {
  auto parse_int = [](const std::string& t) -> Int {
    if (t.empty()) throw input_error("empty integer in rational literal");
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) throw input_error("bare sign in rational literal");
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i])))
        throw input_error("bad character in rational literal: " + t);
    return Int(t);
  };
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(parse_int(s));
  Int num = parse_int(s.substr(0, slash));
  Int den = parse_int(s.substr(slash + 1));
  if (den == 0) throw input_error("zero denominator in rational literal: " + s);
  return Rat(num, den);
}

// ---------------------------------------------------------------------------
// Dense integer matrices, sized at construction. Row-major storage.
// ---------------------------------------------------------------------------

struct Mat {
  std::size_t rows = 0, cols = 0;
  std::vector<Int> a;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Int(0)) {}

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  Int& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  const Int& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

  bool operator==(const Mat& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }

  Mat operator*(const Mat& o) const {
    if (cols != o.rows) throw internal_error("matrix product shape mismatch");
    Mat r(rows, o.cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t k = 0; k < cols; ++k) {
        if (at(i, k) == 0) continue;
        for (std::size_t j = 0; j < o.cols; ++j)
          r.at(i, j) += at(i, k) * o.at(k, j);
      }
    return r;
  }

  IVec operator*(const IVec& v) const {
    if (cols != v.size()) throw internal_error("matrix-vector shape mismatch");
    IVec r(rows, Int(0));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) r[i] += at(i, j) * v[j];
    return r;
  }
};

/// Rank of an integer matrix over the rationals, by fraction-free
/// elimination (Bareiss). The input is taken by value and destroyed.
inline std::size_t rank_over_q(Mat m) {
  std::size_t rank = 0;
  Int prev = 1;
  for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
    std::size_t piv = rank;
    while (piv < m.rows && m.at(piv, col) == 0) ++piv;
    if (piv == m.rows) continue;
    if (piv != rank)
      for (std::size_t j = 0; j < m.cols; ++j)
        std::swap(m.at(piv, j), m.at(rank, j));
    for (std::size_t i = rank + 1; i < m.rows; ++i) {
      for (std::size_t j = col + 1; j < m.cols; ++j)
        m.at(i, j) = (m.at(rank, col) * m.at(i, j) - m.at(i, col) * m.at(rank, j)) / prev;
      m.at(i, col) = 0;
    }
    prev = m.at(rank, col);
    ++rank;
  }
  return rank;
}

/// Integer determinant of a square matrix (Bareiss, fraction-free).
inline Int det(Mat m) {
  if (m.rows != m.cols) throw internal_error("det: non-square matrix");
  const std::size_t n = m.rows;
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n - 1; ++k) {
    if (m.at(k, k) == 0) {
      std::size_t piv = k + 1;
      while (piv < n && m.at(piv, k) == 0) ++piv;
      if (piv == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(k, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m.at(i, j) = (m.at(k, k) * m.at(i, j) - m.at(i, k) * m.at(k, j)) / prev;
      m.at(i, k) = 0;
    }
    prev = m.at(k, k);
  }
  return sign > 0 ? m.at(n - 1, n - 1) : -m.at(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// Smith normal form: U * M * V = D with U, V unimodular and D diagonal with
// d_1 | d_2 | ... | d_r, all nonnegative.
// ---------------------------------------------------------------------------

struct SmithResult {
  Mat u;  // rows x rows, unimodular
  Mat v;  // cols x cols, unimodular
  Mat d;  // diagonal, divisibility chain
};

inline SmithResult smith_normal_form(const Mat& m) {
  SmithResult res{Mat::identity(m.rows), Mat::identity(m.cols), m};
  Mat& d = res.d;
  Mat& u = res.u;
  Mat& v = res.v;

  auto swap_rows = [&](std::size_t r1, std::size_t r2) {
    if (r1 == r2) return;
    for (std::size_t j = 0; j < d.cols; ++j) std::swap(d.at(r1, j), d.at(r2, j));
    for (std::size_t j = 0; j < u.cols; ++j) std::swap(u.at(r1, j), u.at(r2, j));
  };
  auto swap_cols = [&](std::size_t c1, std::size_t c2) {
    if (c1 == c2) return;
    for (std::size_t i = 0; i < d.rows; ++i) std::swap(d.at(i, c1), d.at(i, c2));
    for (std::size_t i = 0; i < v.rows; ++i) std::swap(v.at(i, c1), v.at(i, c2));
  };
  auto add_row = [&](std::size_t dst, std::size_t src, const Int& f) {
    if (f == 0) return;
    for (std::size_t j = 0; j < d.cols; ++j) d.at(dst, j) += f * d.at(src, j);
    for (std::size_t j = 0; j < u.cols; ++j) u.at(dst, j) += f * u.at(src, j);
  };
  auto add_col = [&](std::size_t dst, std::size_t src, const Int& f) {
    if (f == 0) return;
    for (std::size_t i = 0; i < d.rows; ++i) d.at(i, dst) += f * d.at(i, src);
    for (std::size_t i = 0; i < v.rows; ++i) v.at(i, dst) += f * v.at(i, src);
  };
  auto negate_row = [&](std::size_t r) {
    for (std::size_t j = 0; j < d.cols; ++j) d.at(r, j) = -d.at(r, j);
    for (std::size_t j = 0; j < u.cols; ++j) u.at(r, j) = -u.at(r, j);
  };

  const std::size_t steps = std::min(d.rows, d.cols);
  for (std::size_t t = 0; t < steps; ++t) {
    for (;;) {
      // Locate the entry of smallest nonzero magnitude in the trailing block.
      std::size_t pi = t, pj = t;
      Int best = 0;
      for (std::size_t i = t; i < d.rows; ++i)
        for (std::size_t j = t; j < d.cols; ++j) {
          Int mag = boost::multiprecision::abs(d.at(i, j));
          if (mag != 0 && (best == 0 || mag < best)) {
            best = mag;
            pi = i;
            pj = j;
          }
        }
      if (best == 0) goto done;  // trailing block vanished entirely
      swap_rows(t, pi);
      swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < d.rows; ++i) {
        Int q = d.at(i, t) / d.at(t, t);
        add_row(i, t, -q);
        if (d.at(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < d.cols; ++j) {
        Int q = d.at(t, j) / d.at(t, t);
        add_col(j, t, -q);
        if (d.at(t, j) != 0) clean = false;
      }
      if (!clean) continue;  // a smaller remainder appeared; pick a new pivot

      // Pivot divides its row and column; enforce divisibility of the rest
      // of the block by folding an offending row into row t.
      bool divides_all = true;
      for (std::size_t i = t + 1; i < d.rows && divides_all; ++i)
        for (std::size_t j = t + 1; j < d.cols && divides_all; ++j)
          if (d.at(i, j) % d.at(t, t) != 0) {
            add_row(t, i, 1);
            divides_all = false;
          }
      if (divides_all) break;
    }
    if (d.at(t, t) < 0) negate_row(t);
  }
done:
  return res;
}

// ---------------------------------------------------------------------------
// Exact nonnegative feasibility: is there x >= 0 with A x = b?  Phase-one
// simplex over the rationals with Bland's rule, so it always terminates.
// ---------------------------------------------------------------------------

inline bool nonnegative_solution_exists(const std::vector<std::vector<Rat>>& arows,
                                        std::vector<Rat> b) {
  const std::size_t m = arows.size();
  const std::size_t n = m == 0 ? 0 : arows[0].size();
  if (m == 0) return true;
  // Tableau columns: n structural vars, m artificial vars, rhs.
  std::vector<std::vector<Rat>> t(m, std::vector<Rat>(n + m + 1, Rat(0)));
  for (std::size_t i = 0; i < m; ++i) {
    int sgn = b[i] < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) t[i][j] = Rat(sgn) * arows[i][j];
    t[i][n + i] = 1;
    t[i][n + m] = Rat(sgn) * b[i];
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  // Objective: minimize the sum of artificials, w = sum(b') - sum_j colsum_j x_j.
  // The row is kept reduced (zero on basic columns), starting with zeros on
  // the artificial columns because those begin basic.
  std::vector<Rat> z(n + m + 1, Rat(0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) z[j] += t[i][j];
    z[n + m] += t[i][n + m];
  }

  for (;;) {
    // Bland: entering column = smallest index with positive reduced cost.
    std::size_t enter = n + m;
    for (std::size_t j = 0; j < n + m; ++j)
      if (z[j] > 0) {
        enter = j;
        break;
      }
    if (enter == n + m) break;
    // Ratio test; Bland tie-break on smallest basis variable.
    std::size_t leave = m;
    Rat best_ratio = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rat ratio = t[i][n + m] / t[i][enter];
      if (leave == m || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == m)
      throw internal_error("feasibility tableau: unbounded phase-one column");
    // Pivot.
    Rat piv = t[leave][enter];
    for (auto& x : t[leave]) x /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rat f = t[i][enter];
      for (std::size_t j = 0; j <= n + m; ++j) t[i][j] -= f * t[leave][j];
    }
    Rat fz = z[enter];
    for (std::size_t j = 0; j <= n + m; ++j) z[j] -= fz * t[leave][j];
    basis[leave] = enter;
  }
  return z[n + m] == 0;
}

}  // namespace toric_alt
