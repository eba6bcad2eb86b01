#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gfortho/field.hpp"
#include "gfortho/linalg.hpp"

namespace gfo {

struct OrthoReport {
  bool orthogonal = false;
  bool symmetric = false;
  Elem det = 0;
};

// M M^T = I exactly, plus symmetry and determinant.
OrthoReport verify_orthogonal(const FMatrix& m);

// Rows orthonormal: M M^T = I_rows (works for non-square block rows).
bool rows_orthonormal(const FMatrix& m);

// True when w is block circulant with square blocks of size `block` and
// W W^T = I. Only the first block row of W W^T is formed, since the product
// of a block-circulant matrix with its transpose is itself block circulant.
bool block_circulant_orthogonal(const FMatrix& w, std::size_t block);

// A permutation of {0..n-1}; sigma[i] is the image of i.
class PermSpec {
 public:
  explicit PermSpec(std::vector<std::size_t> sigma);

  std::size_t size() const noexcept { return sigma_.size(); }
  std::size_t operator[](std::size_t i) const noexcept { return sigma_[i]; }
  bool even() const noexcept { return even_; }
  const std::vector<std::size_t>& images() const noexcept { return sigma_; }

 private:
  std::vector<std::size_t> sigma_;
  bool even_;
};

enum class Side { Left, Right };

// Left: row i of the result is row sigma[i] of m. Right: column j of the
// result is column sigma[j] of m. Odd permutations throw Error(OddPermutation).
FMatrix permute(const FMatrix& m, const PermSpec& p, Side side);

// All even permutations of n points in lexicographic order of images.
std::vector<PermSpec> even_permutations(std::size_t n);

// Canonical byte string: header (p, m, modulus, rows, cols) followed by the
// entries, row-major, each in a fixed little-endian width.
struct OrthoKey {
  std::string bytes;

  friend bool operator==(const OrthoKey&, const OrthoKey&) = default;
  friend auto operator<=>(const OrthoKey&, const OrthoKey&) = default;
};

OrthoKey ortho_key(const FMatrix& m);
FMatrix decode_key(const OrthoKey& key);
std::string to_hex(const OrthoKey& key);
OrthoKey from_hex(const std::string& hex);

}  // namespace gfo

template <>
struct std::hash<gfo::OrthoKey> {
  std::size_t operator()(const gfo::OrthoKey& k) const noexcept { return std::hash<std::string>{}(k.bytes); }
};
