// GF(2) linear algebra for polar encoding: the Kronecker-power transform,
// lazy generator-submatrix extraction, and dense matrix inversion.
//
// Convention used throughout the library: the 2x2 kernel is the
// lower-triangular F = [[1,0],[1,1]], the generator is G = F^{(x)n} with no
// bit-reversal permutation, and indices are 0-based.  With this kernel
// G_{i,j} = 1 exactly when the bits of j are a subset of the bits of i, which
// gives O(1) lazy entries and makes G_AA unit lower-triangular (hence
// invertible) for any ascending index set A.
#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "polarlink/errors.hpp"

namespace polarlink {

// Dense binary matrix with 64-bit packed rows; arithmetic is mod 2.
class Gf2Matrix {
 public:
  Gf2Matrix() : rows_(0), cols_(0), words_(0) {}
  Gf2Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), words_((cols + 63) / 64),
        bits_(rows * words_, 0) {}

  static Gf2Matrix identity(std::size_t n) {
    Gf2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  int get(std::size_t i, std::size_t j) const {
    return static_cast<int>((word(i, j / 64) >> (j % 64)) & 1u);
  }
  void set(std::size_t i, std::size_t j, int v) {
    std::uint64_t mask = std::uint64_t{1} << (j % 64);
    if (v)
      word(i, j / 64) |= mask;
    else
      word(i, j / 64) &= ~mask;
  }

  // result = this * other (mod 2): XOR together the rows of `other` selected
  // by the set bits of each row of `this`.
  Gf2Matrix operator*(const Gf2Matrix& other) const {
    if (cols_ != other.rows_)
      throw std::invalid_argument("gf2: dimension mismatch in multiply");
    Gf2Matrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k)
        if (get(i, k)) out.xor_row_from(i, other, k);
    return out;
  }

  bool operator==(const Gf2Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ &&
           bits_ == other.bits_;
  }

  // Row-vector (length rows) times this matrix: XOR of the selected rows.
  std::vector<std::uint8_t> left_mul(const std::vector<std::uint8_t>& v) const {
    if (v.size() != rows_)
      throw std::invalid_argument("gf2: vector length mismatch in left_mul");
    std::vector<std::uint64_t> acc(words_, 0);
    for (std::size_t i = 0; i < rows_; ++i)
      if (v[i])
        for (std::size_t w = 0; w < words_; ++w) acc[w] ^= word(i, w);
    std::vector<std::uint8_t> out(cols_);
    for (std::size_t j = 0; j < cols_; ++j)
      out[j] = static_cast<std::uint8_t>((acc[j / 64] >> (j % 64)) & 1u);
    return out;
  }

 private:
  friend Gf2Matrix gf2_invert(const Gf2Matrix&);

  std::uint64_t& word(std::size_t i, std::size_t w) {
    return bits_[i * words_ + w];
  }
  const std::uint64_t& word(std::size_t i, std::size_t w) const {
    return bits_[i * words_ + w];
  }
  void xor_row_from(std::size_t i, const Gf2Matrix& src, std::size_t k) {
    for (std::size_t w = 0; w < words_; ++w) word(i, w) ^= src.word(k, w);
  }
  void xor_rows(std::size_t dst, std::size_t src) {
    for (std::size_t w = 0; w < words_; ++w)
      word(dst, w) ^= word(src, w);
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t w = 0; w < words_; ++w)
      std::swap(word(a, w), word(b, w));
  }

  std::size_t rows_, cols_, words_;
  std::vector<std::uint64_t> bits_;
};

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// x = u * F^{(x)n}, computed in place by the butterfly network in
// O(N log N).  Involutory: applying it twice restores the input.
inline void kron_transform_inplace(std::vector<std::uint8_t>& u) {
  if (!is_power_of_two(u.size()))
    throw std::invalid_argument("kron_transform: length must be a power of two");
  const std::size_t n = u.size();
  for (std::size_t stride = 1; stride < n; stride <<= 1)
    for (std::size_t i = 0; i < n; ++i)
      if ((i & stride) == 0) u[i] ^= u[i | stride];
}

inline std::vector<std::uint8_t> kron_transform(std::vector<std::uint8_t> u) {
  kron_transform_inplace(u);
  return u;
}

// Entry (i, j) of F^{(x)n}: 1 iff the bit pattern of j is contained in i.
inline int generator_entry(std::size_t i, std::size_t j) {
  return (j & ~i) == 0 ? 1 : 0;
}

// Submatrix (G_{i,j}) for i in row_set, j in col_set, of G = F^{(x)n};
// entries are materialized lazily so no dense N x N matrix is ever built.
inline Gf2Matrix generator_submatrix(int n, const std::vector<int>& row_set,
                                     const std::vector<int>& col_set) {
  if (n < 0 || n >= 63)
    throw std::invalid_argument("generator_submatrix: bad exponent");
  const std::size_t big_n = std::size_t{1} << n;
  for (int i : row_set)
    if (i < 0 || static_cast<std::size_t>(i) >= big_n)
      throw std::invalid_argument("generator_submatrix: row index out of range");
  for (int j : col_set)
    if (j < 0 || static_cast<std::size_t>(j) >= big_n)
      throw std::invalid_argument("generator_submatrix: col index out of range");
  Gf2Matrix m(row_set.size(), col_set.size());
  for (std::size_t r = 0; r < row_set.size(); ++r)
    for (std::size_t c = 0; c < col_set.size(); ++c)
      m.set(r, c, generator_entry(static_cast<std::size_t>(row_set[r]),
                                  static_cast<std::size_t>(col_set[c])));
  return m;
}

// Inverse of a square GF(2) matrix by Gauss-Jordan elimination.
// Throws SingularMatrixError when no inverse exists.
inline Gf2Matrix gf2_invert(const Gf2Matrix& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("gf2_invert: matrix must be square");
  const std::size_t n = m.rows();
  Gf2Matrix a = m;
  Gf2Matrix inv = Gf2Matrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && !a.get(pivot, col)) ++pivot;
    if (pivot == n) throw SingularMatrixError("gf2_invert: singular matrix");
    a.swap_rows(col, pivot);
    inv.swap_rows(col, pivot);
    for (std::size_t row = 0; row < n; ++row) {
      if (row != col && a.get(row, col)) {
        a.xor_rows(row, col);
        inv.xor_rows(row, col);
      }
    }
  }
  return inv;
}

}  // namespace polarlink
