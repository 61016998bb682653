#pragma once

#include <cstddef>
#include <optional>

#include "gabkron/linalg/matrix.hpp"

namespace gabkron::codes {

using linalg::Matrix;
using linalg::Vector;

struct GabDecoded {
  Vector message;
  Vector error;
};

/// [n, k] Gabidulin code generated by the Moore matrix of g.
class GabidulinCode {
 public:
  /// Throws InvalidArgument unless rank_weight(g) == g.size() <= m and
  /// 1 <= k <= n.
  GabidulinCode(Vector g, std::size_t k);

  /// rows x g.size() matrix whose row i is g with every coordinate raised to 2^i.
  static Matrix moore(const Vector& g, std::size_t rows);

  const Vector& support() const noexcept { return g_; }
  std::size_t length() const noexcept { return g_.size(); }
  std::size_t dimension() const noexcept { return k_; }
  /// floor((n - k) / 2)
  std::size_t radius() const noexcept { return (length() - k_) / 2; }

  const Matrix& generator() const noexcept { return gen_; }
  const Matrix& parity_check() const noexcept { return parity_; }
  const linalg::FieldPtr& field_ptr() const noexcept { return g_.field_ptr(); }

  Vector encode(const Vector& u) const;

  /// Unique decoding up to radius(). Returns nullopt when no codeword lies
  /// within rank distance radius() of y.
  std::optional<GabDecoded> decode(const Vector& y) const;

 private:
  Vector g_;
  std::size_t k_;
  Matrix gen_;
  Matrix parity_;
};

}  // namespace gabkron::codes
