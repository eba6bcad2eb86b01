#pragma once

// Naive reference implementations for tests. Nothing here calls into the
// library's arithmetic; prime-field values are plain int64 residues.

#include <cstdint>
#include <functional>
#include <vector>

#include "gfortho/linalg.hpp"
#include "gfortho/polymat.hpp"

namespace oracle {

using i64 = std::int64_t;
using IMat = std::vector<std::vector<i64>>;
using IVec = std::vector<i64>;

inline i64 mod(i64 a, i64 p) {
  a %= p;
  return a < 0 ? a + p : a;
}

inline bool trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline IMat zeros(std::size_t r, std::size_t c) { return IMat(r, IVec(c, 0)); }

inline IMat eye(std::size_t n) {
  IMat m = zeros(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline IMat to_imat(const gfo::FMatrix& m) {
  IMat out = zeros(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

inline IMat mul(const IMat& a, const IMat& b, i64 p) {
  IMat c = zeros(a.size(), b.empty() ? 0 : b[0].size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < c[i].size(); ++j) c[i][j] = mod(c[i][j] + a[i][k] * b[k][j], p);
  return c;
}

inline IVec mul(const IMat& a, const IVec& x, i64 p) {
  IVec y(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < x.size(); ++k) y[i] = mod(y[i] + a[i][k] * x[k], p);
  return y;
}

inline IMat transpose(const IMat& a) {
  IMat t = zeros(a.empty() ? 0 : a[0].size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

// Cofactor expansion along the first row.
inline i64 det(const IMat& a, i64 p) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return mod(a[0][0], p);
  i64 acc = 0;
  for (std::size_t c = 0; c < n; ++c) {
    IMat minor;
    for (std::size_t r = 1; r < n; ++r) {
      IVec row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(a[r][k]);
      minor.push_back(row);
    }
    const i64 term = mod(a[0][c] * det(minor, p), p);
    acc = mod(c % 2 ? acc - term : acc + term, p);
  }
  return acc;
}

// The (N+1)x(N+1) matrices of the coefficient system, written out from their
// definition: D has an all-ones first row over the identity; Gamma has a zero
// first row and gamma_{r+c} (1-based, zero past N) at row r >= 1, column c.
inline IMat d_matrix(std::size_t n1) {
  IMat d = eye(n1);
  for (std::size_t c = 0; c < n1; ++c) d[0][c] = 1;
  return d;
}

inline IMat gamma_matrix(const IVec& gamma /* gamma_1..gamma_N */) {
  const std::size_t n1 = gamma.size() + 1;
  IMat g = zeros(n1, n1);
  for (std::size_t r = 1; r < n1; ++r)
    for (std::size_t c = 0; c < n1; ++c)
      if (r + c <= gamma.size()) g[r][c] = gamma[r + c - 1];
  return g;
}

// Every (X_1, ..., X_n) with X_i in F^(N+1) solving the coefficient system
// for column j (1-based), found by enumerating all q^(n(N+1)) candidates.
inline std::vector<std::vector<IVec>> solve_system_exhaustively(i64 p, std::size_t n, const std::vector<IVec>& gammas,
                                                                std::size_t j) {
  const std::size_t n1 = gammas.empty() ? 1 : gammas[0].size() + 1;
  const IMat d = d_matrix(n1);
  std::vector<IMat> g;
  for (const auto& row : gammas) g.push_back(gamma_matrix(row));
  IVec e0(n1, 0);
  e0[0] = 1;

  const std::size_t len = n * n1;
  IVec flat(len, 0);
  std::vector<std::vector<IVec>> solutions;
  for (;;) {
    std::vector<IVec> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = IVec(flat.begin() + i * n1, flat.begin() + (i + 1) * n1);
    bool ok = true;
    for (std::size_t i = 0; i + 1 < n && ok; ++i) {
      const IVec lhs = mul(d, x[i], p), rhs = mul(g[i], x[n - 1], p);
      for (std::size_t k = 0; k < n1; ++k)
        if (mod(lhs[k] - rhs[k] - (i + 1 == j ? e0[k] : 0), p) != 0) ok = false;
    }
    if (ok) {
      IVec acc = mul(d, x[n - 1], p);
      for (std::size_t i = 0; i + 1 < n; ++i) {
        const IVec t = mul(g[i], x[i], p);
        for (std::size_t k = 0; k < n1; ++k) acc[k] = mod(acc[k] + t[k], p);
      }
      for (std::size_t k = 0; k < n1; ++k)
        if (mod(acc[k] - (j == n ? e0[k] : 0), p) != 0) ok = false;
    }
    if (ok) solutions.push_back(x);
    if (len == 0) return solutions;
    std::size_t pos = len;
    while (pos > 0) {
      --pos;
      if (++flat[pos] < p) break;
      flat[pos] = 0;
      if (pos == 0) return solutions;
    }
  }
}

// Schoolbook product of two Laurent polynomials given as (lo, coeffs).
struct Laurent {
  int lo = 0;
  IVec c;
};

inline Laurent mul(const Laurent& a, const Laurent& b, i64 p) {
  if (a.c.empty() || b.c.empty()) return {};
  Laurent r{a.lo + b.lo, IVec(a.c.size() + b.c.size() - 1, 0)};
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = mod(r.c[i + j] + a.c[i] * b.c[j], p);
  return r;
}

inline i64 coeff(const Laurent& a, int k) {
  const int i = k - a.lo;
  return i >= 0 && i < static_cast<int>(a.c.size()) ? a.c[i] : 0;
}

// Coefficient of t^s in A(t) * A~(t), computed entry by entry from
// sum_k C_k C_{k-s}^T over a dense coefficient list starting at t^0.
inline IMat para_product_coeff(const std::vector<IMat>& coeffs, int s, i64 p) {
  const std::size_t n = coeffs.empty() ? 0 : coeffs[0].size();
  IMat out = zeros(n, n);
  for (int k = 0; k < static_cast<int>(coeffs.size()); ++k) {
    const int l = k - s;
    if (l < 0 || l >= static_cast<int>(coeffs.size())) continue;
    const IMat t = mul(coeffs[k], transpose(coeffs[l]), p);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t jj = 0; jj < n; ++jj) out[i][jj] = mod(out[i][jj] + t[i][jj], p);
  }
  return out;
}

}  // namespace oracle
