#include "gfortho/polymat.hpp"

#include <algorithm>

namespace gfo {

LaurentPoly::LaurentPoly(Field field, int lo, std::vector<Elem> coeffs)
    : field_(std::move(field)), lo_(lo), coeffs_(std::move(coeffs)) {
  for (Elem e : coeffs_)
    if (!field_.contains(e)) throw Error(Errc::InvalidArgument, "coefficient out of range");
  normalize();
}

void LaurentPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
  if (lead) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
    lo_ += static_cast<int>(lead);
  }
  if (coeffs_.empty()) lo_ = 0;
}

Elem LaurentPoly::coeff(int k) const noexcept {
  if (is_zero() || k < lo_ || k > hi()) return 0;
  return coeffs_[static_cast<std::size_t>(k - lo_)];
}

namespace {

LaurentPoly combine(const LaurentPoly& a, const LaurentPoly& b, bool subtract) {
  if (!(a.field() == b.field())) throw Error(Errc::FieldMismatch, "polynomials over different fields");
  const Field& f = a.field();
  if (a.is_zero() && b.is_zero()) return LaurentPoly(f);
  const int lo = a.is_zero() ? b.lo() : b.is_zero() ? a.lo() : std::min(a.lo(), b.lo());
  const int hi = a.is_zero() ? b.hi() : b.is_zero() ? a.hi() : std::max(a.hi(), b.hi());
  std::vector<Elem> c(static_cast<std::size_t>(hi - lo + 1));
  for (int k = lo; k <= hi; ++k) {
    const Elem x = a.coeff(k), y = b.coeff(k);
    c[static_cast<std::size_t>(k - lo)] = subtract ? f.sub(x, y) : f.add(x, y);
  }
  return LaurentPoly(f, lo, std::move(c));
}

}  // namespace

LaurentPoly poly_add(const LaurentPoly& a, const LaurentPoly& b) { return combine(a, b, false); }
LaurentPoly poly_sub(const LaurentPoly& a, const LaurentPoly& b) { return combine(a, b, true); }

LaurentPoly poly_mul(const LaurentPoly& a, const LaurentPoly& b) {
  if (!(a.field() == b.field())) throw Error(Errc::FieldMismatch, "polynomials over different fields");
  const Field& f = a.field();
  if (a.is_zero() || b.is_zero()) return LaurentPoly(f);
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  std::vector<Elem> c(x.size() + y.size() - 1, 0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) c[i + j] = f.add(c[i + j], f.mul(x[i], y[j]));
  count_muls(std::uint64_t{x.size()} * y.size());
  return LaurentPoly(f, a.lo() + b.lo(), std::move(c));
}

LaurentPoly tilde(const LaurentPoly& a) {
  if (a.is_zero()) return a;
  std::vector<Elem> c(a.coeffs().rbegin(), a.coeffs().rend());
  return LaurentPoly(a.field(), -a.hi(), std::move(c));
}

LaurentPoly shift(const LaurentPoly& a, int k) {
  if (a.is_zero()) return a;
  return LaurentPoly(a.field(), a.lo() + k, a.coeffs());
}

Elem eval(const LaurentPoly& a, Elem t0) {
  const Field& f = a.field();
  if (a.is_zero()) return 0;
  if (t0 == 0) {
    if (a.lo() < 0) throw Error(Errc::ZeroAtNegativePower, "evaluation at 0 with negative powers");
    return a.coeff(0);
  }
  // Horner over the stored run, then scale by t0^lo.
  Elem acc = 0;
  for (auto it = a.coeffs().rbegin(); it != a.coeffs().rend(); ++it) acc = f.add(f.mul(acc, t0), *it);
  const Elem base = a.lo() >= 0 ? f.pow(t0, static_cast<std::uint64_t>(a.lo()))
                                : f.pow(f.inv(t0), static_cast<std::uint64_t>(-a.lo()));
  return f.mul(acc, base);
}

LaurentPoly series_inverse(const LaurentPoly& p, int order) {
  const Field& f = p.field();
  if (!p.in_plus()) throw Error(Errc::InvalidArgument, "series_inverse needs a polynomial in P+");
  if (order < 0) throw Error(Errc::InvalidArgument, "negative order");
  const Elem c0 = p.coeff(0);
  if (c0 == 0) throw Error(Errc::ZeroFreeTerm, "free term is zero");
  const Elem c0_inv = f.inv(c0);
  std::vector<Elem> q(static_cast<std::size_t>(order) + 1, 0);
  q[0] = c0_inv;
  // q_k = -c0^{-1} * sum_{i=1}^{k} c_i q_{k-i}
  for (int k = 1; k <= order; ++k) {
    Elem s = 0;
    for (int i = 1; i <= k && i <= p.hi(); ++i) {
      s = f.add(s, f.mul(p.coeff(i), q[static_cast<std::size_t>(k - i)]));
      count_muls(1);
    }
    q[static_cast<std::size_t>(k)] = f.neg(f.mul(s, c0_inv));
    count_muls(1);
  }
  return LaurentPoly(f, 0, std::move(q));
}

LaurentPoly negative_part(const LaurentPoly& a) {
  if (a.is_zero() || a.lo() >= 0) return LaurentPoly(a.field());
  std::vector<Elem> c;
  for (int k = a.lo(); k < 0 && k <= a.hi(); ++k) c.push_back(a.coeff(k));
  return LaurentPoly(a.field(), a.lo(), std::move(c));
}

LaurentPoly nonnegative_part(const LaurentPoly& a) {
  if (a.is_zero() || a.hi() < 0) return LaurentPoly(a.field());
  const int lo = std::max(a.lo(), 0);
  std::vector<Elem> c;
  for (int k = lo; k <= a.hi(); ++k) c.push_back(a.coeff(k));
  return LaurentPoly(a.field(), lo, std::move(c));
}

MatPoly::MatPoly(Field field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols) {}

MatPoly::MatPoly(Field field, std::size_t rows, std::size_t cols, int k1, std::vector<FMatrix> coeffs)
    : field_(std::move(field)), rows_(rows), cols_(cols), k1_(k1), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_) {
    if (c.rows() != rows_ || c.cols() != cols_) throw Error(Errc::ShapeMismatch, "coefficient shape");
    if (!(c.field() == field_)) throw Error(Errc::FieldMismatch, "coefficient field");
  }
  normalize();
}

void MatPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
  if (lead) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
    k1_ += static_cast<int>(lead);
  }
  if (coeffs_.empty()) k1_ = 0;
}

FMatrix MatPoly::coeff(int k) const {
  if (is_zero() || k < k1_ || k > k2()) return FMatrix(field_, rows_, cols_);
  return coeffs_[static_cast<std::size_t>(k - k1_)];
}

LaurentPoly MatPoly::entry(std::size_t r, std::size_t c) const {
  std::vector<Elem> e;
  e.reserve(coeffs_.size());
  for (const auto& m : coeffs_) e.push_back(m(r, c));
  return LaurentPoly(field_, k1_, std::move(e));
}

MatPoly MatPoly::from_entries(const Field& f, std::size_t rows, std::size_t cols,
                              const std::vector<LaurentPoly>& entries) {
  if (entries.size() != rows * cols) throw Error(Errc::ShapeMismatch, "entry count");
  int lo = 0, hi = -1;
  bool any = false;
  for (const auto& e : entries) {
    if (e.is_zero()) continue;
    lo = any ? std::min(lo, e.lo()) : e.lo();
    hi = any ? std::max(hi, e.hi()) : e.hi();
    any = true;
  }
  if (!any) return MatPoly(f, rows, cols);
  std::vector<FMatrix> coeffs(static_cast<std::size_t>(hi - lo + 1), FMatrix(f, rows, cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      const auto& e = entries[r * cols + c];
      if (e.is_zero()) continue;
      for (int k = e.lo(); k <= e.hi(); ++k) coeffs[static_cast<std::size_t>(k - lo)](r, c) = e.coeff(k);
    }
  return MatPoly(f, rows, cols, lo, std::move(coeffs));
}

MatPoly matpoly_mul(const MatPoly& a, const MatPoly& b) {
  if (a.cols() != b.rows()) throw Error(Errc::ShapeMismatch, "matpoly_mul");
  const Field& f = a.field();
  if (a.is_zero() || b.is_zero()) return MatPoly(f, a.rows(), b.cols());
  const std::size_t len = a.coeffs().size() + b.coeffs().size() - 1;
  std::vector<FMatrix> c(len, FMatrix(f, a.rows(), b.cols()));
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) c[i + j] = add(c[i + j], matmul(a.coeffs()[i], b.coeffs()[j]));
  return MatPoly(f, a.rows(), b.cols(), a.k1() + b.k1(), std::move(c));
}

MatPoly tilde(const MatPoly& a) {
  if (a.is_zero()) return MatPoly(a.field(), a.cols(), a.rows());
  std::vector<FMatrix> c;
  c.reserve(a.coeffs().size());
  for (auto it = a.coeffs().rbegin(); it != a.coeffs().rend(); ++it) c.push_back(transpose(*it));
  return MatPoly(a.field(), a.cols(), a.rows(), -a.k2(), std::move(c));
}

FMatrix eval(const MatPoly& a, Elem t0) {
  const Field& f = a.field();
  FMatrix r(f, a.rows(), a.cols());
  if (a.is_zero()) return r;
  if (t0 == 0 && a.k1() < 0) throw Error(Errc::ZeroAtNegativePower, "evaluation at 0 with negative powers");
  if (t0 == 0) return a.coeff(0);
  Elem power = a.k1() >= 0 ? f.pow(t0, static_cast<std::uint64_t>(a.k1()))
                           : f.pow(f.inv(t0), static_cast<std::uint64_t>(-a.k1()));
  for (const auto& c : a.coeffs()) {
    for (std::size_t i = 0; i < r.rows(); ++i) {
      auto dst = r.row(i);
      auto src = c.row(i);
      for (std::size_t j = 0; j < dst.size(); ++j) dst[j] = f.add(dst[j], f.mul(power, src[j]));
    }
    power = f.mul(power, t0);
  }
  return r;
}

ParaunitaryReport is_paraunitary(const MatPoly& a) {
  ParaunitaryReport rep;
  const std::size_t n = a.rows();
  if (a.rows() != a.cols()) return rep;
  const Field& f = a.field();
  if (a.is_zero()) {
    rep.defect = ParaunitaryDefect{0, 0, 0};
    return rep;
  }
  // Coefficient s of A*Ã is sum_k C_{k+s} C_k^T, s in [-(len-1), len-1].
  // A*Ã equals its own tilde, so coefficient -s is the transpose of
  // coefficient s and only s >= 0 needs forming.
  const int len = static_cast<int>(a.coeffs().size());
  const auto& c = a.coeffs();
  for (int s = 0; s <= len - 1; ++s) {
    FMatrix acc(f, n, n);
    for (int k = 0; k + s < len; ++k)
      matmul_abt_accumulate(acc, c[static_cast<std::size_t>(k + s)], c[static_cast<std::size_t>(k)]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Elem want = (s == 0 && i == j) ? 1 : 0;
        if (acc(i, j) != want) {
          rep.defect = ParaunitaryDefect{s, i, j};
          return rep;
        }
      }
  }
  rep.paraunitary = true;
  return rep;
}

const char* det_status_name(DetStatus s) {
  switch (s) {
    case DetStatus::Pass: return "pass";
    case DetStatus::Inconclusive: return "inconclusive";
    case DetStatus::Fail: return "fail";
    case DetStatus::Skipped: return "skipped";
  }
  return "unknown";
}

DetStatus det_diagnostic(const MatPoly& u, int n_degree) {
  if (u.rows() != u.cols()) return DetStatus::Fail;
  if (!u.is_zero() && u.k1() < 0) return DetStatus::Fail;
  const Field& f = u.field();
  const std::uint64_t needed = std::uint64_t{u.rows()} * static_cast<std::uint64_t>(n_degree) + 1;
  const std::uint64_t available = f.q() - 1;
  const std::uint64_t points = std::min(needed, available);
  for (std::uint64_t t = 1; t <= points; ++t) {
    const Elem t0 = static_cast<Elem>(t);
    if (determinant(eval(u, t0)) != f.pow(t0, static_cast<std::uint64_t>(n_degree))) return DetStatus::Fail;
  }
  return points >= needed ? DetStatus::Pass : DetStatus::Inconclusive;
}

}  // namespace gfo
