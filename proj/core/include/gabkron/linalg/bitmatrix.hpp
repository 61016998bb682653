#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gabkron/gf2m.hpp"
#include "gabkron/random.hpp"

namespace gabkron::linalg {

/// Dense matrix over GF(2), rows packed into 64-bit words.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  static BitMatrix identity(std::size_t n);
  static BitMatrix random(std::size_t rows, std::size_t cols, RandomSource& rng);
  /// Rejection-samples an invertible n x n matrix; throws GenerationError
  /// after max_draws failures.
  static BitMatrix random_invertible(std::size_t n, RandomSource& rng, int max_draws = 1024);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  bool get(std::size_t r, std::size_t c) const noexcept {
    return (data_[r * wpr_ + c / 64] >> (c % 64)) & 1U;
  }
  void set(std::size_t r, std::size_t c, bool v) noexcept {
    auto& w = data_[r * wpr_ + c / 64];
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    w = v ? (w | bit) : (w & ~bit);
  }
  void flip(std::size_t r, std::size_t c) noexcept {
    data_[r * wpr_ + c / 64] ^= std::uint64_t{1} << (c % 64);
  }

  std::size_t rank() const;
  /// Throws SingularMatrix when not invertible.
  BitMatrix inverse() const;
  BitMatrix transpose() const;
  /// Right cyclic shift of every row by `shift` columns: column j moves to
  /// column (j + shift) mod cols.
  BitMatrix rotate_columns(std::size_t shift) const;

  friend BitMatrix operator*(const BitMatrix& a, const BitMatrix& b);
  friend bool operator==(const BitMatrix& a, const BitMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t wpr_ = 0;
  std::vector<std::uint64_t> data_;
};

/// Dimension of the GF(2)-span of a set of field elements.
std::size_t gf2_rank(std::span<const gf2m::Element> elems);

}  // namespace gabkron::linalg
