#include "gabkron/linalg/bitmatrix.hpp"

#include <algorithm>
#include <bit>
#include <utility>

#include "gabkron/errors.hpp"

namespace gabkron::linalg {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), data_(rows * ((cols + 63) / 64), 0) {}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix id(n, n);
  for (std::size_t i = 0; i < n; ++i) id.set(i, i, true);
  return id;
}

BitMatrix BitMatrix::random(std::size_t rows, std::size_t cols, RandomSource& rng) {
  BitMatrix r(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) r.set(i, j, rng.coin());
  }
  return r;
}

BitMatrix BitMatrix::random_invertible(std::size_t n, RandomSource& rng, int max_draws) {
  for (int attempt = 0; attempt < max_draws; ++attempt) {
    BitMatrix r = random(n, n, rng);
    if (r.rank() == n) return r;
  }
  throw GenerationError("no invertible GF(2) matrix within retry budget");
}

std::size_t BitMatrix::rank() const {
  BitMatrix a = *this;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
    std::size_t piv = rank;
    while (piv < rows_ && !a.get(piv, c)) ++piv;
    if (piv == rows_) continue;
    if (piv != rank) {
      std::swap_ranges(a.data_.begin() + static_cast<std::ptrdiff_t>(piv * wpr_),
                       a.data_.begin() + static_cast<std::ptrdiff_t>((piv + 1) * wpr_),
                       a.data_.begin() + static_cast<std::ptrdiff_t>(rank * wpr_));
    }
    for (std::size_t r = rank + 1; r < rows_; ++r) {
      if (!a.get(r, c)) continue;
      for (std::size_t w = 0; w < wpr_; ++w) a.data_[r * wpr_ + w] ^= a.data_[rank * wpr_ + w];
    }
    ++rank;
  }
  return rank;
}

BitMatrix BitMatrix::inverse() const {
  if (rows_ != cols_) throw InvalidArgument("inverse of non-square GF(2) matrix");
  const std::size_t n = rows_;
  BitMatrix a = *this;
  BitMatrix inv = identity(n);
  auto xor_row = [](BitMatrix& m, std::size_t dst, std::size_t src) {
    for (std::size_t w = 0; w < m.wpr_; ++w) m.data_[dst * m.wpr_ + w] ^= m.data_[src * m.wpr_ + w];
  };
  auto swap_rows = [](BitMatrix& m, std::size_t x, std::size_t y) {
    for (std::size_t w = 0; w < m.wpr_; ++w) std::swap(m.data_[x * m.wpr_ + w], m.data_[y * m.wpr_ + w]);
  };
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && !a.get(piv, c)) ++piv;
    if (piv == n) throw SingularMatrix(rank());
    if (piv != c) {
      swap_rows(a, piv, c);
      swap_rows(inv, piv, c);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r != c && a.get(r, c)) {
        xor_row(a, r, c);
        xor_row(inv, r, c);
      }
    }
  }
  return inv;
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (get(i, j)) t.set(j, i, true);
    }
  }
  return t;
}

BitMatrix BitMatrix::rotate_columns(std::size_t shift) const {
  BitMatrix r(rows_, cols_);
  if (cols_ == 0) return r;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (get(i, j)) r.set(i, (j + shift) % cols_, true);
    }
  }
  return r;
}

BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols_ != b.rows_) throw InvalidArgument("GF(2) matrix product dimension mismatch");
  BitMatrix p(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (!a.get(i, k)) continue;
      for (std::size_t w = 0; w < b.wpr_; ++w) p.data_[i * p.wpr_ + w] ^= b.data_[k * b.wpr_ + w];
    }
  }
  return p;
}

std::size_t gf2_rank(std::span<const gf2m::Element> elems) {
  if (elems.empty()) return 0;
  const gf2m::Field* field = nullptr;
  for (const auto& e : elems) {
    if (e.field() != nullptr) {
      field = e.field();
      break;
    }
  }
  const std::size_t nw = field != nullptr ? field->words() : gf2m::kMaxWords;
  // XOR basis keyed by leading bit.
  std::vector<gf2m::Words> basis;
  std::vector<int> lead;
  for (const auto& e : elems) {
    gf2m::Words v = e.words();
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const int lb = lead[b];
      if ((v[static_cast<std::size_t>(lb) / 64] >> (lb % 64)) & 1U) {
        for (std::size_t w = 0; w < nw; ++w) v[w] ^= basis[b][w];
      }
    }
    int top = -1;
    for (std::size_t w = nw; w-- > 0;) {
      if (v[w] != 0) {
        top = static_cast<int>(64 * w + 63 - std::countl_zero(v[w]));
        break;
      }
    }
    if (top < 0) continue;
    // Keep the basis fully reduced on leading bits.
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if ((basis[b][static_cast<std::size_t>(top) / 64] >> (top % 64)) & 1U) {
        for (std::size_t w = 0; w < nw; ++w) basis[b][w] ^= v[w];
      }
    }
    basis.push_back(v);
    lead.push_back(top);
  }
  return basis.size();
}

}  // namespace gabkron::linalg
