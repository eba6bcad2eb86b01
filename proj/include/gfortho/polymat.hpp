#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "gfortho/field.hpp"
#include "gfortho/linalg.hpp"

namespace gfo {

// Laurent polynomial sum_{k=lo}^{lo+len-1} c_k t^k. Always trimmed: the first
// and last stored coefficients are nonzero, and zero is {lo = 0, coeffs = {}}.
class LaurentPoly {
 public:
  explicit LaurentPoly(Field field) : field_(std::move(field)) {}
  LaurentPoly(Field field, int lo, std::vector<Elem> coeffs);

  static LaurentPoly constant(const Field& f, Elem c) { return LaurentPoly(f, 0, {c}); }
  static LaurentPoly monomial(const Field& f, int k, Elem c = 1) { return LaurentPoly(f, k, {c}); }

  const Field& field() const noexcept { return field_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  int lo() const noexcept { return lo_; }
  // Highest exponent; meaningless for zero.
  int hi() const noexcept { return lo_ + static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Elem>& coeffs() const noexcept { return coeffs_; }
  Elem coeff(int k) const noexcept;

  // Class membership: P+ (no negative powers), P- (no positive powers),
  // P+_N (exponents in [0, N]) and P-_N (exponents in [-N, 0]).
  bool in_plus() const noexcept { return is_zero() || lo_ >= 0; }
  bool in_minus() const noexcept { return is_zero() || hi() <= 0; }
  bool in_plus_n(int n) const noexcept { return in_plus() && (is_zero() || hi() <= n); }
  bool in_minus_n(int n) const noexcept { return in_minus() && (is_zero() || lo_ >= -n); }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) noexcept {
    return a.lo_ == b.lo_ && a.coeffs_ == b.coeffs_ && a.field_ == b.field_;
  }

 private:
  void normalize();

  Field field_;
  int lo_ = 0;
  std::vector<Elem> coeffs_;
};

LaurentPoly poly_add(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly poly_sub(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly poly_mul(const LaurentPoly& a, const LaurentPoly& b);
// c_k t^k -> c_k t^-k
LaurentPoly tilde(const LaurentPoly& a);
LaurentPoly shift(const LaurentPoly& a, int k);  // multiply by t^k
Elem eval(const LaurentPoly& a, Elem t0);
// Q with P * Q = 1 mod t^(order+1). P must lie in P+ with a nonzero free term.
LaurentPoly series_inverse(const LaurentPoly& p, int order);
LaurentPoly negative_part(const LaurentPoly& a);
LaurentPoly nonnegative_part(const LaurentPoly& a);

// Matrix polynomial sum_{k=k1}^{k2} C_k t^k, stored as dense coefficient
// matrices. Trimmed like LaurentPoly: zero leading/trailing coefficients are
// dropped and the zero polynomial has no coefficients and k1 = 0.
class MatPoly {
 public:
  MatPoly(Field field, std::size_t rows, std::size_t cols);
  MatPoly(Field field, std::size_t rows, std::size_t cols, int k1, std::vector<FMatrix> coeffs);

  static MatPoly constant(const FMatrix& c) { return MatPoly(c.field(), c.rows(), c.cols(), 0, {c}); }
  static MatPoly from_entries(const Field& f, std::size_t rows, std::size_t cols,
                              const std::vector<LaurentPoly>& entries);  // row-major

  const Field& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  int k1() const noexcept { return k1_; }
  int k2() const noexcept { return k1_ + static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<FMatrix>& coeffs() const noexcept { return coeffs_; }
  // Coefficient matrix of t^k (zero outside the stored range).
  FMatrix coeff(int k) const;
  LaurentPoly entry(std::size_t r, std::size_t c) const;

  friend bool operator==(const MatPoly& a, const MatPoly& b) noexcept {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.k1_ == b.k1_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void normalize();

  Field field_;
  std::size_t rows_, cols_;
  int k1_ = 0;
  std::vector<FMatrix> coeffs_;
};

MatPoly matpoly_mul(const MatPoly& a, const MatPoly& b);
MatPoly tilde(const MatPoly& a);
// Throws Error(ZeroAtNegativePower) when t0 = 0 and a has negative powers.
FMatrix eval(const MatPoly& a, Elem t0);

struct ParaunitaryDefect {
  int exponent;
  std::size_t row, col;
};

struct ParaunitaryReport {
  bool paraunitary = false;
  // First violation among exponents >= 0 (the product is para-Hermitian, so
  // exponent -s fails exactly when s does), by exponent then row-major.
  std::optional<ParaunitaryDefect> defect;
};

// A(t) * Ã(t) == I_n as a full convolution.
ParaunitaryReport is_paraunitary(const MatPoly& a);

enum class DetStatus { Pass, Inconclusive, Fail, Skipped };
const char* det_status_name(DetStatus s);

// Checks det U(t0) = t0^N at min(q-1, n*N+1) nonzero points. Pass needs
// n*N+1 points (then the degree bound makes it a proof).
DetStatus det_diagnostic(const MatPoly& u, int n_degree);

}  // namespace gfo
