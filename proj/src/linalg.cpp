#include "gfortho/linalg.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace gfo {

namespace detail {
thread_local MulCounter* active_counter = nullptr;
}

ScopedMulCount::ScopedMulCount(MulCounter& counter) noexcept : previous_(detail::active_counter) {
  detail::active_counter = &counter;
}

ScopedMulCount::~ScopedMulCount() { detail::active_counter = previous_; }

namespace {

void require_same_field(const FMatrix& a, const FMatrix& b) {
  if (!(a.field() == b.field())) throw Error(Errc::FieldMismatch, "matrices over different fields");
}

// Number of products (p-1)^2 that can be added to a reduced residue without
// overflowing 64 bits.
std::size_t lazy_chunk(std::uint32_t p) {
  const std::uint64_t pm = p - 1;
  const std::uint64_t sq = pm * pm;
  if (sq == 0) return std::numeric_limits<std::size_t>::max();
  return static_cast<std::size_t>((std::numeric_limits<std::uint64_t>::max() - p) / sq);
}

// Dot product of two equal-length residue spans in GF(p).
Elem dot_prime(std::span<const Elem> x, std::span<const Elem> y, std::uint32_t p, std::size_t chunk) {
  std::uint64_t acc = 0;
  std::size_t k = 0;
  const std::size_t n = x.size();
  while (k < n) {
    const std::size_t end = std::min(n, k + chunk);
    for (; k < end; ++k) acc += std::uint64_t{x[k]} * y[k];
    acc %= p;
  }
  return static_cast<Elem>(acc);
}

Elem dot_generic(const Field& f, std::span<const Elem> x, std::span<const Elem> y) {
  Elem acc = 0;
  for (std::size_t k = 0; k < x.size(); ++k) acc = f.add(acc, f.mul(x[k], y[k]));
  return acc;
}

}  // namespace

FMatrix::FMatrix(Field field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

FMatrix::FMatrix(Field field, std::size_t rows, std::size_t cols, std::vector<Elem> data)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw Error(Errc::ShapeMismatch, "data length != rows * cols");
  for (Elem e : data_)
    if (!field_.contains(e)) throw Error(Errc::InvalidArgument, "matrix entry out of range: " + std::to_string(e));
}

FMatrix FMatrix::identity(const Field& field, std::size_t n) {
  FMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

FMatrix FMatrix::from_ints(const Field& field, const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows[0].size() : 0;
  FMatrix m(field, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw Error(Errc::ShapeMismatch, "ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = field.from_int(rows[i][j]);
  }
  return m;
}

bool FMatrix::is_zero() const noexcept {
  for (Elem e : data_)
    if (e != 0) return false;
  return true;
}

bool FMatrix::is_identity() const noexcept {
  if (!square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1u : 0u)) return false;
  return true;
}

FMatrix transpose(const FMatrix& a) {
  FMatrix t(a.field(), a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

FMatrix add(const FMatrix& a, const FMatrix& b) {
  require_same_field(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(Errc::ShapeMismatch, "add");
  FMatrix r = a;
  const Field& f = a.field();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ra = r.row(i);
    auto rb = b.row(i);
    for (std::size_t j = 0; j < ra.size(); ++j) ra[j] = f.add(ra[j], rb[j]);
  }
  return r;
}

FMatrix sub(const FMatrix& a, const FMatrix& b) {
  require_same_field(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(Errc::ShapeMismatch, "sub");
  FMatrix r = a;
  const Field& f = a.field();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ra = r.row(i);
    auto rb = b.row(i);
    for (std::size_t j = 0; j < ra.size(); ++j) ra[j] = f.sub(ra[j], rb[j]);
  }
  return r;
}

FMatrix scale(const FMatrix& a, Elem s) {
  FMatrix r = a;
  const Field& f = a.field();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (auto& e : r.row(i)) e = f.mul(e, s);
  count_muls(a.rows() * a.cols());
  return r;
}

FMatrix matmul(const FMatrix& a, const FMatrix& b) {
  require_same_field(a, b);
  if (a.cols() != b.rows()) throw Error(Errc::ShapeMismatch, "matmul: inner dimensions differ");
  const Field& f = a.field();
  FMatrix c(f, a.rows(), b.cols());
  count_muls(std::uint64_t{a.rows()} * a.cols() * b.cols());
  if (f.is_prime_field()) {
    const std::uint32_t p = f.p();
    const std::size_t chunk = lazy_chunk(p);
    std::vector<std::uint64_t> acc(b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      std::fill(acc.begin(), acc.end(), 0);
      std::size_t since = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) {
        const std::uint64_t aik = a(i, k);
        if (aik != 0) {
          auto bk = b.row(k);
          for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += aik * bk[j];
        }
        if (++since == chunk) {
          for (auto& v : acc) v %= p;
          since = 0;
        }
      }
      auto ci = c.row(i);
      for (std::size_t j = 0; j < acc.size(); ++j) ci[j] = static_cast<Elem>(acc[j] % p);
    }
    return c;
  }
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Elem aik = a(i, k);
      if (aik == 0) continue;
      auto bk = b.row(k);
      auto ci = c.row(i);
      for (std::size_t j = 0; j < ci.size(); ++j) ci[j] = f.add(ci[j], f.mul(aik, bk[j]));
    }
  return c;
}

void matmul_abt_accumulate(FMatrix& acc, const FMatrix& a, const FMatrix& b) {
  require_same_field(a, b);
  if (a.cols() != b.cols() || acc.rows() != a.rows() || acc.cols() != b.rows())
    throw Error(Errc::ShapeMismatch, "matmul_abt: shapes differ");
  const Field& f = a.field();
  count_muls(std::uint64_t{a.rows()} * a.cols() * b.rows());
  if (f.is_prime_field()) {
    const std::size_t chunk = lazy_chunk(f.p());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < b.rows(); ++j)
        acc(i, j) = f.add(acc(i, j), dot_prime(a.row(i), b.row(j), f.p(), chunk));
    return;
  }
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.rows(); ++j) acc(i, j) = f.add(acc(i, j), dot_generic(f, a.row(i), b.row(j)));
}

FMatrix matmul_abt(const FMatrix& a, const FMatrix& b) {
  FMatrix c(a.field(), a.rows(), b.rows());
  matmul_abt_accumulate(c, a, b);
  return c;
}

FVector matvec(const FMatrix& a, std::span<const Elem> x) {
  if (a.cols() != x.size()) throw Error(Errc::ShapeMismatch, "matvec");
  const Field& f = a.field();
  FVector y(a.rows());
  count_muls(std::uint64_t{a.rows()} * a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    y[i] = f.is_prime_field() ? dot_prime(a.row(i), x, f.p(), lazy_chunk(f.p())) : dot_generic(f, a.row(i), x);
  return y;
}

FVector apply_d(const Field& f, std::span<const Elem> v) {
  FVector r(v.begin(), v.end());
  for (std::size_t i = 1; i < v.size(); ++i) r[0] = f.add(r[0], v[i]);
  return r;
}

FVector apply_d_inverse(const Field& f, std::span<const Elem> v) {
  FVector r(v.begin(), v.end());
  for (std::size_t i = 1; i < v.size(); ++i) r[0] = f.sub(r[0], v[i]);
  return r;
}

Expected<LuFactorization, SingularMatrix> lu_factor(const FMatrix& a) {
  if (!a.square()) throw Error(Errc::ShapeMismatch, "lu_factor needs a square matrix");
  const Field& f = a.field();
  const std::size_t n = a.rows();
  FMatrix lu = a;
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::vector<Elem> pivot_inv(n);
  std::uint64_t muls = 0;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && lu(piv, col) == 0) ++piv;
    if (piv == n) {
      count_muls(muls);
      return SingularMatrix{col, n - rank(a)};
    }
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(piv, j), lu(col, j));
      std::swap(perm[piv], perm[col]);
    }
    const Elem inv = f.inv(lu(col, col));
    pivot_inv[col] = inv;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (lu(r, col) == 0) continue;
      const Elem factor = f.mul(lu(r, col), inv);
      lu(r, col) = factor;
      for (std::size_t j = col + 1; j < n; ++j) lu(r, j) = f.sub(lu(r, j), f.mul(factor, lu(col, j)));
      muls += 1 + (n - col - 1);
    }
  }
  count_muls(muls);
  return LuFactorization(std::move(lu), std::move(perm), std::move(pivot_inv));
}

FVector LuFactorization::solve(std::span<const Elem> b) const {
  if (b.size() != n_) throw Error(Errc::ShapeMismatch, "rhs length");
  const Field& f = lu_.field();
  FVector y(n_);
  for (std::size_t i = 0; i < n_; ++i) y[i] = b[perm_[i]];
  // forward: L y = Pb
  for (std::size_t i = 0; i < n_; ++i) {
    Elem s = y[i];
    for (std::size_t j = 0; j < i; ++j) s = f.sub(s, f.mul(lu_(i, j), y[j]));
    y[i] = s;
  }
  // back: U x = y
  for (std::size_t i = n_; i-- > 0;) {
    Elem s = y[i];
    for (std::size_t j = i + 1; j < n_; ++j) s = f.sub(s, f.mul(lu_(i, j), y[j]));
    y[i] = f.mul(s, pivot_inv_[i]);
  }
  count_muls(std::uint64_t{n_} * n_);
  return y;
}

std::size_t rank(const FMatrix& a) {
  const Field& f = a.field();
  FMatrix m = a;
  std::size_t r = 0;
  for (std::size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, col) == 0) ++piv;
    if (piv == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    const Elem inv = f.inv(m(r, col));
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, col) == 0) continue;
      const Elem factor = f.mul(m(i, col), inv);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    ++r;
  }
  return r;
}

Elem determinant(const FMatrix& a) {
  if (!a.square()) throw Error(Errc::ShapeMismatch, "determinant needs a square matrix");
  const Field& f = a.field();
  const std::size_t n = a.rows();
  FMatrix m = a;
  Elem det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m(piv, col) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
      det = f.neg(det);
    }
    det = f.mul(det, m(col, col));
    const Elem inv = f.inv(m(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m(r, col) == 0) continue;
      const Elem factor = f.mul(m(r, col), inv);
      for (std::size_t j = col; j < n; ++j) m(r, j) = f.sub(m(r, j), f.mul(factor, m(col, j)));
    }
  }
  return det;
}

}  // namespace gfo
