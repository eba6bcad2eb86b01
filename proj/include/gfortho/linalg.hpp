#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gfortho/error.hpp"
#include "gfortho/field.hpp"

namespace gfo {

// Counts field multiplications (not additions) performed by the instrumented
// routines of this library while a ScopedMulCount is active on the thread.
class MulCounter {
 public:
  std::uint64_t count() const noexcept { return count_; }
  void add(std::uint64_t n) noexcept { count_ += n; }

 private:
  std::uint64_t count_ = 0;
};

class ScopedMulCount {
 public:
  explicit ScopedMulCount(MulCounter& counter) noexcept;
  ~ScopedMulCount();
  ScopedMulCount(const ScopedMulCount&) = delete;
  ScopedMulCount& operator=(const ScopedMulCount&) = delete;

 private:
  MulCounter* previous_;
};

namespace detail {
extern thread_local MulCounter* active_counter;
}

inline void count_muls(std::uint64_t n) noexcept {
  if (detail::active_counter) detail::active_counter->add(n);
}

using FVector = std::vector<Elem>;

class FMatrix {
 public:
  FMatrix(Field field, std::size_t rows, std::size_t cols);
  FMatrix(Field field, std::size_t rows, std::size_t cols, std::vector<Elem> data);

  static FMatrix identity(const Field& field, std::size_t n);
  // Row-major initializer; entries are reduced into the prime subfield.
  static FMatrix from_ints(const Field& field, const std::vector<std::vector<std::int64_t>>& rows);

  const Field& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Elem operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
  Elem& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }

  std::span<const Elem> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<Elem> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  const std::vector<Elem>& data() const noexcept { return data_; }

  bool is_zero() const noexcept;
  bool is_identity() const noexcept;

  friend bool operator==(const FMatrix& a, const FMatrix& b) noexcept {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_ && a.field_ == b.field_;
  }

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Elem> data_;
};

FMatrix transpose(const FMatrix& a);
FMatrix add(const FMatrix& a, const FMatrix& b);
FMatrix sub(const FMatrix& a, const FMatrix& b);
FMatrix scale(const FMatrix& a, Elem s);
// Counts a.rows * a.cols * b.cols multiplications.
FMatrix matmul(const FMatrix& a, const FMatrix& b);
// a * b^T without forming the transpose. Counts a.rows * a.cols * b.rows.
FMatrix matmul_abt(const FMatrix& a, const FMatrix& b);
// acc += a * b^T, in place.
void matmul_abt_accumulate(FMatrix& acc, const FMatrix& a, const FMatrix& b);
FVector matvec(const FMatrix& a, std::span<const Elem> x);

// The (N+1)x(N+1) operator D: identity with an all-ones first row. Neither D
// nor its inverse is ever formed; both act in O(N) additions.
FVector apply_d(const Field& f, std::span<const Elem> v);
FVector apply_d_inverse(const Field& f, std::span<const Elem> v);

struct SingularMatrix {
  std::size_t column;        // first column without a pivot
  std::size_t rank_deficit;  // dimension - rank
};

class LuFactorization {
 public:
  std::size_t size() const noexcept { return n_; }
  const Field& field() const noexcept { return lu_.field(); }
  // Solves A x = b. Counts n^2 multiplications (inverted pivots are stored).
  FVector solve(std::span<const Elem> b) const;

 private:
  friend Expected<LuFactorization, SingularMatrix> lu_factor(const FMatrix& a);
  LuFactorization(FMatrix lu, std::vector<std::size_t> perm, std::vector<Elem> pivot_inv)
      : n_(lu.rows()), lu_(std::move(lu)), perm_(std::move(perm)), pivot_inv_(std::move(pivot_inv)) {}

  std::size_t n_;
  FMatrix lu_;                     // unit-lower L below the diagonal, U on and above
  std::vector<std::size_t> perm_;  // row i of PA is row perm_[i] of A
  std::vector<Elem> pivot_inv_;
};

// Gaussian elimination, pivot = first row with a nonzero entry in the column.
Expected<LuFactorization, SingularMatrix> lu_factor(const FMatrix& a);

inline FVector lu_solve(const LuFactorization& f, std::span<const Elem> b) { return f.solve(b); }

std::size_t rank(const FMatrix& a);
Elem determinant(const FMatrix& a);

}  // namespace gfo
