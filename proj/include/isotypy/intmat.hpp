#pragma once

// Exact integer matrix algebra: Hermite and Smith normal forms with
// transform tracking, kernels and lattice comparison. Matrices are
// row-major vectors of mpz_class; row vectors span lattices.

#include <gmpxx.h>

#include <cassert>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace iso {

using ZMat = std::vector<std::vector<mpz_class>>;
using ZVec = std::vector<mpz_class>;

inline ZMat zmat(std::size_t r, std::size_t c) {
  return ZMat(r, ZVec(c, 0));
}

inline ZMat identity_mat(std::size_t n) {
  ZMat m = zmat(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline ZMat transpose(const ZMat& a) {
  if (a.empty()) return {};
  ZMat t = zmat(a[0].size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

inline ZMat mat_mul(const ZMat& a, const ZMat& b) {
  if (a.empty() || b.empty()) return {};
  assert(a[0].size() == b.size());
  ZMat c = zmat(a.size(), b[0].size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < b[0].size(); ++j)
        c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

// Row Hermite normal form: echelon, positive pivots, entries above a
// pivot reduced into [0, pivot). Zero rows are dropped, so the result is
// a canonical basis of the row lattice.
inline ZMat hnf(ZMat a) {
  std::size_t rows = a.size();
  if (rows == 0) return a;
  std::size_t cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // eliminate column c below row r with a gcd cascade
    for (std::size_t i = r + 1; i < rows; ++i) {
      while (a[i][c] != 0) {
        if (a[r][c] == 0) {
          std::swap(a[r], a[i]);
          continue;
        }
        mpz_class q = a[i][c] / a[r][c];
        for (std::size_t j = 0; j < cols; ++j) a[i][j] -= q * a[r][j];
        if (a[i][c] != 0) std::swap(a[r], a[i]);
      }
    }
    if (a[r][c] == 0) continue;
    if (a[r][c] < 0)
      for (std::size_t j = 0; j < cols; ++j) a[r][j] = -a[r][j];
    for (std::size_t i = 0; i < r; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
      if (q != 0)
        for (std::size_t j = 0; j < cols; ++j) a[i][j] -= q * a[r][j];
    }
    ++r;
  }
  a.resize(r);
  return a;
}

// Hermite form together with the row transform: u * a = h, where h keeps
// only the nonzero rows and u has matching row count over the original rows.
struct HnfTransform {
  ZMat h;
  ZMat u;
};

inline HnfTransform hnf_transform(ZMat a) {
  std::size_t rows = a.size();
  ZMat u = identity_mat(rows);
  if (rows == 0) return {a, u};
  std::size_t cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    for (std::size_t i = r + 1; i < rows; ++i) {
      while (a[i][c] != 0) {
        if (a[r][c] == 0) {
          std::swap(a[r], a[i]);
          std::swap(u[r], u[i]);
          continue;
        }
        mpz_class q = a[i][c] / a[r][c];
        for (std::size_t j = 0; j < cols; ++j) a[i][j] -= q * a[r][j];
        for (std::size_t j = 0; j < rows; ++j) u[i][j] -= q * u[r][j];
        if (a[i][c] != 0) {
          std::swap(a[r], a[i]);
          std::swap(u[r], u[i]);
        }
      }
    }
    if (a[r][c] == 0) continue;
    if (a[r][c] < 0) {
      for (std::size_t j = 0; j < cols; ++j) a[r][j] = -a[r][j];
      for (std::size_t j = 0; j < rows; ++j) u[r][j] = -u[r][j];
    }
    for (std::size_t i = 0; i < r; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
      if (q != 0) {
        for (std::size_t j = 0; j < cols; ++j) a[i][j] -= q * a[r][j];
        for (std::size_t j = 0; j < rows; ++j) u[i][j] -= q * u[r][j];
      }
    }
    ++r;
  }
  a.resize(r);
  u.resize(r);
  return {std::move(a), std::move(u)};
}

// Solve x * a = b over the integers (i.e. express b in the row lattice of
// a); returns the coefficient vector over the rows of a, or nothing when b
// lies outside the lattice.
inline std::optional<ZVec> solve_in_row_lattice(const ZMat& a, const ZVec& b) {
  if (a.empty()) {
    for (const mpz_class& x : b)
      if (x != 0) return std::nullopt;
    return ZVec{};
  }
  std::size_t cols = a[0].size();
  if (b.size() != cols) return std::nullopt;
  HnfTransform t = hnf_transform(a);
  ZVec rem = b;
  ZVec coef(t.h.size(), 0);
  for (std::size_t i = 0; i < t.h.size(); ++i) {
    std::size_t c = 0;
    while (c < cols && t.h[i][c] == 0) ++c;
    if (c == cols) continue;
    if (!mpz_divisible_p(rem[c].get_mpz_t(), t.h[i][c].get_mpz_t()))
      return std::nullopt;
    coef[i] = rem[c] / t.h[i][c];
    if (coef[i] != 0)
      for (std::size_t j = 0; j < cols; ++j) rem[j] -= coef[i] * t.h[i][j];
  }
  for (const mpz_class& x : rem)
    if (x != 0) return std::nullopt;
  ZVec x(a.size(), 0);
  for (std::size_t i = 0; i < t.u.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) x[j] += coef[i] * t.u[i][j];
  return x;
}

inline bool lattice_equal(const ZMat& a, const ZMat& b) {
  return hnf(a) == hnf(b);
}

inline int lattice_rank(const ZMat& a) { return static_cast<int>(hnf(a).size()); }

struct SmithResult {
  ZMat u;  // rows x rows, unimodular
  ZMat s;  // diagonal form, u * a * v == s
  ZMat v;  // cols x cols, unimodular
};

// Smith normal form with transforms. Straightforward elimination; fine at
// the matrix sizes appearing here (a few hundred rows).
inline SmithResult smith(ZMat a) {
  std::size_t rows = a.size();
  std::size_t cols = rows ? a[0].size() : 0;
  SmithResult res{identity_mat(rows), {}, identity_mat(cols)};
  auto& u = res.u;
  auto& v = res.v;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // find a nonzero pivot
    std::size_t pi = t, pj = t;
    bool found = false;
    for (std::size_t i = t; i < rows && !found; ++i)
      for (std::size_t j = t; j < cols && !found; ++j)
        if (a[i][j] != 0) {
          pi = i;
          pj = j;
          found = true;
        }
    if (!found) break;
    std::swap(a[t], a[pi]);
    std::swap(u[t], u[pi]);
    for (std::size_t i = 0; i < rows; ++i) std::swap(a[i][t], a[i][pj]);
    for (std::size_t i = 0; i < cols; ++i) std::swap(v[i][t], v[i][pj]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        while (a[i][t] != 0) {
          mpz_class q = a[i][t] / a[t][t];
          if (q != 0)
            for (std::size_t j = 0; j < cols; ++j) a[i][j] -= q * a[t][j];
          if (q != 0)
            for (std::size_t j = 0; j < rows; ++j) u[i][j] -= q * u[t][j];
          if (a[i][t] != 0) {
            std::swap(a[t], a[i]);
            std::swap(u[t], u[i]);
          }
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        while (a[t][j] != 0) {
          mpz_class q = a[t][j] / a[t][t];
          if (q != 0) {
            for (std::size_t i = 0; i < rows; ++i) a[i][j] -= q * a[i][t];
            for (std::size_t i = 0; i < cols; ++i) v[i][j] -= q * v[i][t];
          }
          if (a[t][j] != 0) {
            for (std::size_t i = 0; i < rows; ++i) std::swap(a[i][t], a[i][j]);
            for (std::size_t i = 0; i < cols; ++i) std::swap(v[i][t], v[i][j]);
            clean = false;  // column ops may have refilled the pivot column
          }
        }
      }
    }
    // enforce divisibility d_t | d_{t+1}: not needed for rank/saturation or
    // unimodularity certificates, so we keep plain diagonal form but fix
    // signs.
    if (a[t][t] < 0) {
      for (std::size_t j = 0; j < cols; ++j) a[t][j] = -a[t][j];
      for (std::size_t j = 0; j < rows; ++j) u[t][j] = -u[t][j];
    }
    ++t;
  }
  res.s = std::move(a);
  return res;
}

inline std::vector<mpz_class> smith_diagonal(const ZMat& a) {
  SmithResult r = smith(a);
  std::vector<mpz_class> d;
  std::size_t n = std::min(r.s.size(), r.s.empty() ? 0 : r.s[0].size());
  for (std::size_t i = 0; i < n; ++i)
    if (r.s[i][i] != 0) d.push_back(r.s[i][i]);
  return d;
}

// Saturated integer kernel of a (right kernel: {x : a * x^T = 0}), returned
// as rows forming a Z-basis of ker_Q(a) ∩ Z^cols.
inline ZMat integer_kernel(const ZMat& a) {
  if (a.empty()) return {};
  std::size_t cols = a[0].size();
  SmithResult r = smith(a);
  std::size_t rank = 0;
  std::size_t n = std::min(r.s.size(), cols);
  for (std::size_t i = 0; i < n; ++i)
    if (r.s[i][i] != 0) ++rank;
  // columns rank..cols-1 of v span the kernel; v is unimodular so they are
  // already a saturated basis.
  ZMat k;
  for (std::size_t j = rank; j < cols; ++j) {
    ZVec row(cols);
    for (std::size_t i = 0; i < cols; ++i) row[i] = r.v[i][j];
    k.push_back(std::move(row));
  }
  return k;
}

// Z-basis of the saturation of the row lattice of a: (Q-span of rows) ∩ Z^n.
inline ZMat saturate_rows(const ZMat& a) {
  if (a.empty()) return {};
  std::size_t cols = a[0].size();
  SmithResult r = smith(a);
  std::size_t rank = 0;
  std::size_t n = std::min(r.s.size(), cols);
  for (std::size_t i = 0; i < n; ++i)
    if (r.s[i][i] != 0) ++rank;
  // rows of v^{-1}? Easier: saturation = integer kernel of the integer
  // kernel's... avoid inversion: saturation rows are the first `rank`
  // rows of (v^T)^{-1}. Use: saturation = ker(ker(a_rows as map)) trick.
  ZMat k = integer_kernel(a);            // vectors orthogonal-free? no:
  // k is the right-kernel of a, i.e. {x : a x = 0}. The saturation of the
  // row span equals the right kernel of k viewed as a matrix of
  // constraints: {y : k y = 0} has Q-span = rowspan_Q(a) whenever a has
  // full... this holds since rowspan_Q(a) = (ker_Q a)^perp under the
  // standard pairing.
  if (k.empty()) {
    // full column rank: saturation is all of Z^cols intersected with the
    // rank-dimensional span = need rank == cols for that shortcut
    if (rank == cols) return identity_mat(cols);
  }
  return integer_kernel(k);
}

inline mpz_class det(ZMat a) {
  std::size_t n = a.size();
  if (n == 0) return 1;
  assert(a[0].size() == n);
  // fraction-free Bareiss
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t s = k + 1;
      while (s < n && a[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(a[k], a[s]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    prev = a[k][k];
  }
  return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

}  // namespace iso
