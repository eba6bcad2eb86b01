#include "gfortho/jl_core.hpp"

#include <limits>
#include <stdexcept>

#include "gfortho/ortho.hpp"
#include "gfortho/prng.hpp"

namespace gfo {

GeneratorSet::GeneratorSet(Field field, std::size_t n, std::size_t degree)
    : field_(std::move(field)), n_(n), degree_(degree), gamma_((n ? n - 1 : 0) * degree, 0) {
  if (n < 1) throw Error(Errc::InvalidArgument, "n must be >= 1");
}

GeneratorSet::GeneratorSet(Field field, std::size_t n, std::size_t degree, std::vector<Elem> gamma)
    : field_(std::move(field)), n_(n), degree_(degree), gamma_(std::move(gamma)) {
  if (n < 1) throw Error(Errc::InvalidArgument, "n must be >= 1");
  if (gamma_.size() != (n - 1) * degree) throw Error(Errc::ShapeMismatch, "gamma must be (n-1) x N");
  for (Elem e : gamma_)
    if (!field_.contains(e)) throw Error(Errc::InvalidArgument, "gamma entry out of range");
}

GeneratorSet GeneratorSet::random(const Field& field, std::size_t n, std::size_t degree, Prng& rng) {
  GeneratorSet g(field, n, degree);
  for (auto& e : g.gamma_) e = sample_uniform(field, rng);
  return g;
}

namespace {

// gram[a][b] = sum_i gamma_{i,a} gamma_{i,b}, 1 <= a, b <= N, stored 0-based.
std::vector<Elem> generator_gram(const GeneratorSet& g) {
  const Field& f = g.field();
  const std::size_t N = g.degree();
  const std::size_t rows = g.n() - 1;
  std::vector<Elem> h(N * N, 0);
  if (f.is_prime_field()) {
    const std::uint64_t p = f.p();
    const std::uint64_t sq = (p - 1) * (p - 1);
    const std::uint64_t chunk = sq ? (std::numeric_limits<std::uint64_t>::max() - p) / sq : rows + 1;
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t b = a; b < N; ++b) {
        std::uint64_t acc = 0, since = 0;
        for (std::size_t i = 0; i < rows; ++i) {
          acc += std::uint64_t{g.gamma(i, a)} * g.gamma(i, b);
          if (++since == chunk) {
            acc %= p;
            since = 0;
          }
        }
        h[a * N + b] = h[b * N + a] = static_cast<Elem>(acc % p);
      }
  } else {
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t b = a; b < N; ++b) {
        Elem acc = 0;
        for (std::size_t i = 0; i < rows; ++i) acc = f.add(acc, f.mul(g.gamma(i, a), g.gamma(i, b)));
        h[a * N + b] = h[b * N + a] = acc;
      }
  }
  count_muls(std::uint64_t{rows} * N * (N + 1) / 2);
  return h;
}

// Every entry of D^-1 Gamma_i is a +-1 combination of gamma_{i,*}, so
// sum_i (D^-1 Gamma_i)^2 is a sum of Gram entries and needs no further
// multiplications. With M = D^-1 Gamma_i (0-based, K = N + 1):
//   M[r][c] = gamma_{r+c}              for r >= 1 (zero past N)
//   M[0][c] = -sum_{a=c+1}^{N} gamma_a
FMatrix delta_from_gram(const Field& f, std::size_t N, const std::vector<Elem>& h) {
  const std::size_t K = N + 1;
  auto H = [&](std::size_t a, std::size_t b) { return h[(a - 1) * N + (b - 1)]; };  // 1-based
  // tail[a][c] = sum_{b=c+1}^{N} H(a, b), a in 1..N, c in 0..N
  std::vector<Elem> tail(K * K, 0);
  for (std::size_t a = 1; a <= N; ++a)
    for (std::size_t c = N; c-- > 0;) tail[a * K + c] = f.add(tail[a * K + c + 1], H(a, c + 1));
  // below[s][b] = sum_{a=s+1}^{N} H(a, b), s in 0..N, b in 1..N
  std::vector<Elem> below(K * K, 0);
  for (std::size_t s = N; s-- > 0;)
    for (std::size_t b = 1; b <= N; ++b) below[s * K + b] = f.add(below[(s + 1) * K + b], H(s + 1, b));

  FMatrix d(f, K, K);
  for (std::size_t c = 0; c < K; ++c) {
    // row 0: M[0][0] M[0][c] + sum_{s>=1} M[0][s] M[s][c]
    Elem v = 0;
    for (std::size_t a = 1; a <= N; ++a) v = f.add(v, tail[a * K + c]);
    for (std::size_t s = 1; s + c <= N; ++s) v = f.sub(v, below[s * K + s + c]);
    d(0, c) = v;
  }
  for (std::size_t r = 1; r < K; ++r)
    for (std::size_t c = 0; c < K; ++c) {
      Elem v = f.neg(tail[r * K + c]);
      for (std::size_t s = 1; r + s <= N && s + c <= N; ++s) v = f.add(v, H(r + s, s + c));
      d(r, c) = v;
    }
  for (std::size_t i = 0; i < K; ++i) d(i, i) = f.add(d(i, i), 1);
  return d;
}

// y = Gamma_i x, Gamma_i with zero first row.
void gamma_times(const GeneratorSet& g, std::size_t i, std::span<const Elem> x, std::span<Elem> y) {
  const Field& f = g.field();
  const std::size_t N = g.degree();
  y[0] = 0;
  for (std::size_t r = 1; r <= N; ++r) {
    Elem s = 0;
    for (std::size_t c = 0; r + c <= N; ++c) s = f.add(s, f.mul(g.gamma(i, r + c - 1), x[c]));
    y[r] = s;
  }
  count_muls(N * (N + 1) / 2);
}

}  // namespace

Expected<SystemWorkspace, SingularDelta> build_delta(const GeneratorSet& g) {
  const Field& f = g.field();
  const std::size_t K = g.degree() + 1;
  if (g.n() == 1) return SystemWorkspace{g, FMatrix::identity(f, K), std::nullopt};
  FMatrix delta = delta_from_gram(f, g.degree(), generator_gram(g));
  auto lu = lu_factor(delta);
  if (!lu) return SingularDelta{lu.error().column, lu.error().rank_deficit};
  return SystemWorkspace{g, std::move(delta), std::move(lu).value()};
}

FMatrix hankel_form_delta(const GeneratorSet& g) {
  const Field& f = g.field();
  const std::size_t N = g.degree(), K = N + 1;
  MulCounter discard;
  ScopedMulCount scope(discard);
  FMatrix acc = FMatrix::identity(f, K);
  for (std::size_t i = 0; i + 1 < g.n(); ++i) {
    FMatrix gm(f, K, K);
    for (std::size_t r = 0; r < K; ++r)
      for (std::size_t c = 0; c < K; ++c) {
        const std::size_t k = r + c;  // gamma_{i,k}, k = 0 is the corner zero
        if (k >= 1 && k <= N) gm(r, c) = g.gamma(i, k - 1);
      }
    acc = add(acc, matmul(gm, gm));
  }
  return acc;
}

Expected<GenerationResult, SingularDelta> generate(const GeneratorSet& g, const GenerateOptions& opts) {
  const Field& f = g.field();
  const std::size_t n = g.n(), N = g.degree(), K = N + 1;

  MulCounter construction;
  std::vector<FMatrix> coeffs(K, FMatrix(f, n, n));
  {
    ScopedMulCount scope(construction);
    auto ws = build_delta(g);
    if (!ws) return ws.error();

    FVector rhs(K), xn, y(K);
    for (std::size_t j = 0; j < n; ++j) {
      // j < n-1: rhs = -D^-1 Gamma_j D^-1 e_0 = (sum_k gamma_{j,k}, -gamma_{j,1}, ..., -gamma_{j,N})
      // j = n-1: rhs = D^-1 e_0 = e_0
      std::fill(rhs.begin(), rhs.end(), 0);
      if (j + 1 < n) {
        for (std::size_t k = 0; k < N; ++k) {
          rhs[0] = f.add(rhs[0], g.gamma(j, k));
          rhs[k + 1] = f.neg(g.gamma(j, k));
        }
      } else {
        rhs[0] = 1;
      }
      xn = ws->lu ? ws->lu->solve(rhs) : rhs;

      for (std::size_t i = 0; i + 1 < n; ++i) {
        gamma_times(g, i, xn, y);
        FVector xi = apply_d_inverse(f, y);
        if (i == j) xi[0] = f.add(xi[0], 1);
        for (std::size_t k = 0; k < K; ++k) coeffs[k](i, j) = xi[k];
      }
      // last entry t^N x~_n(t): coefficients reversed
      for (std::size_t k = 0; k < K; ++k) coeffs[k](n - 1, j) = xn[N - k];
    }
  }

  FMatrix w1(f, n, n * K);
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) w1(r, k * n + c) = coeffs[k](r, c);
  const FMatrix last_coeff = coeffs[N];
  MatPoly u(f, n, n, 0, std::move(coeffs));

  FMatrix w0 = [&] {
    MulCounter discard;
    ScopedMulCount scope(discard);
    return eval(u, f.minus_one());
  }();

  GenerationResult res{g, std::move(u), std::move(w0), std::move(w1), construction.count(), {}};
  count_muls(construction.count());

  if (opts.verify) {
    MulCounter discard;
    ScopedMulCount scope(discard);
    Diagnostics& d = res.diagnostics;
    d.polynomial_degree_ok = res.u.is_zero() || (res.u.k1() >= 0 && res.u.k2() <= static_cast<int>(N));
    d.u1_identity = eval(res.u, 1).is_identity();
    d.paraunitary = is_paraunitary(res.u).paraunitary;
    d.w0_orthogonal = matmul_abt(res.w0, res.w0).is_identity();
    d.last_row_nonzero = false;
    for (std::size_t c = 0; c < n; ++c) d.last_row_nonzero |= last_coeff(n - 1, c) != 0;
    if (opts.check_det) d.det = det_diagnostic(res.u, static_cast<int>(N));
    if (!d.polynomial_degree_ok || !d.u1_identity || !d.paraunitary || !d.w0_orthogonal || !d.last_row_nonzero ||
        d.det == DetStatus::Fail)
      throw std::logic_error("generate: postcondition violated");
  }
  return res;
}

GeneratorSet recover(const MatPoly& u, std::size_t degree) {
  const Field& f = u.field();
  if (u.rows() != u.cols() || u.rows() == 0) throw Error(Errc::ShapeMismatch, "recover needs a square matrix polynomial");
  const std::size_t n = u.rows();
  const int N = static_cast<int>(degree);
  if (!u.is_zero() && (u.k1() < 0 || u.k2() > N))
    throw Error(Errc::InvalidArgument, "U must have exponents in [0, N]");
  {
    MulCounter discard;
    ScopedMulCount scope(discard);
    if (!is_paraunitary(u).paraunitary) throw Error(Errc::NotParaunitary, "U(t) U~(t) != I");
  }
  GeneratorSet g(f, n, degree);
  if (n == 1 || degree == 0) return g;

  const FMatrix un = u.coeff(N);
  std::size_t anchor = n;
  for (std::size_t j = 0; j < n; ++j)
    if (un(n - 1, j) != 0) {
      anchor = j;
      break;
    }
  if (anchor == n) throw Error(Errc::NoAnchorColumn, "last row of U_N is zero");

  // zeta_i = [ u~_ij (t^N u~_nj)^-1 ]^-
  const LaurentPoly den = shift(tilde(u.entry(n - 1, anchor)), N);
  const LaurentPoly den_inv = series_inverse(den, N - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const LaurentPoly zeta = negative_part(poly_mul(tilde(u.entry(i, anchor)), den_inv));
    for (int k = 1; k <= N; ++k) g.gamma(i, static_cast<std::size_t>(k - 1)) = zeta.coeff(-k);
  }
  return g;
}

FMatrix build_circulant(const GenerationResult& r) {
  const std::size_t n = r.generators.n();
  const std::size_t K = r.generators.degree() + 1;
  FMatrix w(r.w1.field(), n * K, n * K);
  for (std::size_t b = 0; b < K; ++b)
    for (std::size_t row = 0; row < n; ++row) {
      auto dst = w.row(b * n + row);
      auto src = r.w1.row(row);
      for (std::size_t col = 0; col < n * K; ++col) dst[(col + b * n) % (n * K)] = src[col];
    }
  MulCounter discard;
  ScopedMulCount scope(discard);
  if (!block_circulant_orthogonal(w, n)) throw std::logic_error("build_circulant: W W^T != I");
  return w;
}

}  // namespace gfo
