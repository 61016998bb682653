#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gabkron/codes/gabidulin.hpp"

namespace gabkron::codes {

struct KronDecoded {
  /// Recovered message of length k1 * k2, or nullopt on failure.
  std::optional<Vector> message;
  /// Blocks whose Gabidulin decoding failed.
  std::vector<std::size_t> failed_blocks;
  /// Information set used for the final solve (empty on failure).
  std::vector<std::size_t> info_set;
};

/// Code generated by G1 (x) G2 where G2 generates a Gabidulin code.
class KroneckerCode {
 public:
  /// Throws SingularMatrix if G1 does not have full row rank.
  KroneckerCode(Matrix g1, GabidulinCode c2);

  const Matrix& g1() const noexcept { return g1_; }
  const GabidulinCode& inner() const noexcept { return c2_; }
  const Matrix& generator() const noexcept { return g_; }
  /// G1 (x) I_{k2}, of size k x n1*k2.
  const Matrix& gbar1() const noexcept { return gbar1_; }
  /// I_{n1} (x) G2, of size n1*k2 x n.
  const Matrix& gbar2() const noexcept { return gbar2_; }
  /// Lexicographically first information set of G1.
  const std::vector<std::size_t>& info_set() const noexcept { return info_set_; }

  std::size_t n1() const noexcept { return g1_.cols(); }
  std::size_t k1() const noexcept { return g1_.rows(); }
  std::size_t n2() const noexcept { return c2_.length(); }
  std::size_t k2() const noexcept { return c2_.dimension(); }
  std::size_t length() const noexcept { return n1() * n2(); }
  std::size_t dimension() const noexcept { return k1() * k2(); }

  Vector encode(const Vector& m) const;

  /// rank(Gbar1) == k, checked numerically.
  bool check_factor_rank() const;

  /// True iff c lies in the row space of Gbar2, the block-diagonal
  /// Gabidulin code containing this one.
  bool in_block_supercode(const Vector& c) const;

  /// Decodes each length-n2 block, then solves for the message over an
  /// information set of decodable blocks. `preferred` is tried first; other
  /// sets follow in lexicographic order.
  KronDecoded decode(const Vector& y, std::span<const std::size_t> preferred = {}) const;

 private:
  std::optional<Vector> solve_message(const std::vector<Vector>& block_msgs,
                                      const std::vector<std::size_t>& set) const;

  Matrix g1_;
  GabidulinCode c2_;
  Matrix g_;
  Matrix gbar1_;
  Matrix gbar2_;
  std::vector<std::size_t> info_set_;
};

}  // namespace gabkron::codes
