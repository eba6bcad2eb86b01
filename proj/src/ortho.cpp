#include "gfortho/ortho.hpp"

#include <algorithm>
#include <numeric>

namespace gfo {

OrthoReport verify_orthogonal(const FMatrix& m) {
  OrthoReport r;
  if (!m.square()) return r;
  r.orthogonal = matmul_abt(m, m).is_identity();
  r.symmetric = true;
  for (std::size_t i = 0; i < m.rows() && r.symmetric; ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i)) {
        r.symmetric = false;
        break;
      }
  r.det = determinant(m);
  return r;
}

bool rows_orthonormal(const FMatrix& m) { return matmul_abt(m, m).is_identity(); }

bool block_circulant_orthogonal(const FMatrix& w, std::size_t block) {
  if (!w.square() || block == 0 || w.rows() % block != 0) return false;
  const std::size_t nb = w.rows() / block;
  // structure: block (b, c) == block (0, (c - b) mod nb)
  for (std::size_t b = 1; b < nb; ++b)
    for (std::size_t c = 0; c < nb; ++c) {
      const std::size_t c0 = (c + nb - b) % nb;
      for (std::size_t i = 0; i < block; ++i)
        for (std::size_t j = 0; j < block; ++j)
          if (w(b * block + i, c * block + j) != w(i, c0 * block + j)) return false;
    }
  // first block row of W W^T: rows 0..block-1 against every row of W
  FMatrix top(w.field(), block, w.cols());
  for (std::size_t i = 0; i < block; ++i) std::copy(w.row(i).begin(), w.row(i).end(), top.row(i).begin());
  const FMatrix g = matmul_abt(top, w);
  for (std::size_t i = 0; i < block; ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      if (g(i, j) != (i == j ? 1u : 0u)) return false;
  return true;
}

PermSpec::PermSpec(std::vector<std::size_t> sigma) : sigma_(std::move(sigma)), even_(true) {
  const std::size_t n = sigma_.size();
  std::vector<bool> seen(n, false);
  for (std::size_t v : sigma_) {
    if (v >= n || seen[v]) throw Error(Errc::InvalidArgument, "not a permutation");
    seen[v] = true;
  }
  // parity = (n - number of cycles) mod 2
  std::fill(seen.begin(), seen.end(), false);
  std::size_t cycles = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (std::size_t j = i; !seen[j]; j = sigma_[j]) seen[j] = true;
  }
  even_ = (n - cycles) % 2 == 0;
}

FMatrix permute(const FMatrix& m, const PermSpec& p, Side side) {
  if (!p.even()) throw Error(Errc::OddPermutation, "only even permutations are admitted");
  const std::size_t dim = side == Side::Left ? m.rows() : m.cols();
  if (p.size() != dim) throw Error(Errc::ShapeMismatch, "permutation size");
  FMatrix r(m.field(), m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      r(i, j) = side == Side::Left ? m(p[i], j) : m(i, p[j]);
  return r;
}

std::vector<PermSpec> even_permutations(std::size_t n) {
  std::vector<std::size_t> s(n);
  std::iota(s.begin(), s.end(), 0);
  std::vector<PermSpec> out;
  do {
    PermSpec p(s);
    if (p.even()) out.push_back(std::move(p));
  } while (std::next_permutation(s.begin(), s.end()));
  return out;
}

namespace {

std::size_t elem_width(std::uint64_t q) {
  std::size_t w = 1;
  while (w < 4 && (q - 1) >> (8 * w)) ++w;
  return w;
}

void put_le(std::string& out, std::uint64_t v, std::size_t width) {
  for (std::size_t i = 0; i < width; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint64_t get_le(const std::string& in, std::size_t& pos, std::size_t width) {
  if (pos + width > in.size()) throw Error(Errc::Parse, "truncated key");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < width; ++i) v |= std::uint64_t{static_cast<unsigned char>(in[pos + i])} << (8 * i);
  pos += width;
  return v;
}

}  // namespace

OrthoKey ortho_key(const FMatrix& m) {
  const Field& f = m.field();
  const std::size_t w = elem_width(f.q());
  OrthoKey k;
  k.bytes.reserve(16 + 4 * f.modulus().size() + w * m.data().size());
  put_le(k.bytes, f.p(), 4);
  put_le(k.bytes, f.m(), 1);
  for (auto c : f.modulus()) put_le(k.bytes, c, 4);
  put_le(k.bytes, m.rows(), 4);
  put_le(k.bytes, m.cols(), 4);
  for (Elem e : m.data()) put_le(k.bytes, e, w);
  return k;
}

FMatrix decode_key(const OrthoKey& key) {
  std::size_t pos = 0;
  const auto p = get_le(key.bytes, pos, 4);
  const auto m = static_cast<unsigned>(get_le(key.bytes, pos, 1));
  std::optional<std::vector<std::uint32_t>> modulus;
  if (m > 1) {
    std::vector<std::uint32_t> mod(m + 1);
    for (auto& c : mod) c = static_cast<std::uint32_t>(get_le(key.bytes, pos, 4));
    modulus = std::move(mod);
  }
  const Field f = Field::make(p, m, modulus);
  const auto rows = get_le(key.bytes, pos, 4);
  const auto cols = get_le(key.bytes, pos, 4);
  const std::size_t w = elem_width(f.q());
  std::vector<Elem> data(rows * cols);
  for (auto& e : data) e = static_cast<Elem>(get_le(key.bytes, pos, w));
  if (pos != key.bytes.size()) throw Error(Errc::Parse, "trailing bytes in key");
  return FMatrix(f, rows, cols, std::move(data));
}

std::string to_hex(const OrthoKey& key) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s;
  s.reserve(key.bytes.size() * 2);
  for (unsigned char c : key.bytes) {
    s.push_back(digits[c >> 4]);
    s.push_back(digits[c & 15]);
  }
  return s;
}

OrthoKey from_hex(const std::string& hex) {
  if (hex.size() % 2) throw Error(Errc::Parse, "odd hex length");
  auto nibble = [](char c) -> unsigned {
    if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
    if (c >= 'a' && c <= 'f') return static_cast<unsigned>(c - 'a' + 10);
    if (c >= 'A' && c <= 'F') return static_cast<unsigned>(c - 'A' + 10);
    throw Error(Errc::Parse, "bad hex digit");
  };
  OrthoKey k;
  for (std::size_t i = 0; i < hex.size(); i += 2) k.bytes.push_back(static_cast<char>(nibble(hex[i]) << 4 | nibble(hex[i + 1])));
  return k;
}

}  // namespace gfo
