#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "gabkron/random.hpp"

namespace gabkron::gf2m {

inline constexpr unsigned kMaxDegree = 512;
inline constexpr std::size_t kMaxWords = kMaxDegree / 64;

using Words = std::array<std::uint64_t, kMaxWords>;

/// A binary polynomial given by the exponents of its nonzero terms, highest
/// first, e.g. {90, 27, 0} for x^90 + x^27 + 1.
struct SparsePoly {
  std::vector<unsigned> exponents;

  unsigned degree() const { return exponents.empty() ? 0 : exponents.front(); }
  std::string to_string() const;

  friend bool operator==(const SparsePoly&, const SparsePoly&) = default;
};

/// Ben-Or irreducibility test over GF(2): f of degree m is irreducible iff
/// gcd(x^(2^i) - x mod f, f) = 1 for every 1 <= i <= m/2.
bool is_irreducible(const SparsePoly& f);

/// Deterministic modulus choice: the irreducible trinomial x^m + x^a + 1
/// with the smallest a; if none exists, the irreducible pentanomial
/// x^m + x^a + x^b + x^c + 1 (a > b > c >= 1) that is smallest as an integer.
SparsePoly search_modulus(unsigned m);

class Field;

/// An element of GF(2^m) in the polynomial basis. Carries a non-owning
/// pointer to its Field; the Field must outlive the element (matrices and
/// keys hold the Field by shared_ptr).
class Element {
 public:
  /// Unbound zero. Arithmetic on an unbound element throws FieldMismatch.
  Element() = default;

  const Field* field() const noexcept { return field_; }
  const Words& words() const noexcept { return w_; }

  bool is_zero() const noexcept;
  bool is_one() const noexcept;
  bool bit(unsigned i) const noexcept { return (w_[i / 64] >> (i % 64)) & 1U; }

  /// Big-endian hex of the coefficient bits, for diagnostics.
  std::string to_hex() const;

  Element& operator+=(const Element& rhs);
  Element& operator-=(const Element& rhs) { return *this += rhs; }
  Element& operator*=(const Element& rhs);

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a += b; }
  friend Element operator-(const Element& a) { return a; }
  friend Element operator*(Element a, const Element& b) { return a *= b; }
  friend Element operator/(const Element& a, const Element& b);

  /// Coefficient equality. Elements from incompatible fields compare unequal.
  friend bool operator==(const Element& a, const Element& b) noexcept;

 private:
  friend class Field;
  Element(const Field* f, const Words& w) : field_(f), w_(w) {}

  const Field* field_ = nullptr;
  Words w_{};
};

/// GF(2^m) with an explicit irreducible modulus. Immutable after
/// construction and safe to share across threads.
class Field {
 public:
  /// Throws InvalidArgument if the degree is outside [2, 512] or the
  /// modulus is reducible.
  explicit Field(SparsePoly modulus);

  /// Shared instance for degree m using the registry modulus (see
  /// standard_modulus). Instances are cached per degree.
  static std::shared_ptr<const Field> standard(unsigned m);

  /// Precomputed registry modulus for m, falling back to search_modulus.
  static SparsePoly standard_modulus(unsigned m);

  unsigned degree() const noexcept { return m_; }
  std::size_t words() const noexcept { return nw_; }
  std::size_t byte_length() const noexcept { return (m_ + 7) / 8; }
  const SparsePoly& modulus() const noexcept { return modulus_; }

  Element zero() const { return Element(this, Words{}); }
  Element one() const;
  /// The class of x.
  Element generator() const;
  /// Low 64 coefficient bits from an integer; bits at or above m must be zero.
  Element from_uint(std::uint64_t v) const;
  Element from_words(const Words& w) const;

  Element add(const Element& a, const Element& b) const;
  Element mul(const Element& a, const Element& b) const;
  Element square(const Element& a) const;
  /// Extended Euclid over GF(2)[x]. Throws DivisionByZero on zero.
  Element inv(const Element& a) const;
  /// a^(2^i).
  Element frobenius(const Element& a, unsigned i) const;

  /// True iff {a, a^2, ..., a^(2^(m-1))} is a basis of GF(2^m) over GF(2).
  bool is_normal(const Element& a) const;

  Element random(RandomSource& rng) const;
  Element random_nonzero(RandomSource& rng) const;

  /// First normal element drawn from the seeded generator.
  Element find_normal_element(std::span<const std::uint8_t> seed) const;
  Element find_normal_element(RandomSource& rng) const;

  /// ceil(m/8) bytes, coefficient of x^0 in bit 0 of byte 0.
  Bytes encode(const Element& a) const;
  void encode_into(const Element& a, Bytes& out) const;
  /// Throws ParseError on wrong length or bits at or above m.
  Element decode(std::span<const std::uint8_t> bytes) const;

  /// Same degree and modulus.
  bool compatible(const Field& other) const noexcept {
    return this == &other || (m_ == other.m_ && modulus_ == other.modulus_);
  }

  /// dst[i] += s * src[i]. The entries of dst and src are trusted to belong
  /// to this field (container invariant); only s is checked.
  void axpy(std::span<Element> dst, std::span<const Element> src, const Element& s) const;
  void scale(std::span<Element> v, const Element& s) const;

  void mul_words(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out) const;

  /// Throws FieldMismatch unless both elements are bound to compatible fields.
  static const Field& common(const Element& a, const Element& b);

 private:
  using MulKernel = void (*)(const std::uint64_t*, const std::uint64_t*, std::size_t,
                             std::uint64_t*);

  void reduce(std::uint64_t* product, std::uint64_t* out) const;
  void check_owned(const Element& a) const;

  SparsePoly modulus_;
  unsigned m_;
  std::size_t nw_;
  std::vector<unsigned> low_terms_;
  std::uint64_t top_mask_;
  MulKernel kernel_;
};

}  // namespace gabkron::gf2m
