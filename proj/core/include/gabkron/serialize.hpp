#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gabkron/scheme.hpp"

namespace gabkron::io {

using linalg::Matrix;
using linalg::Vector;

inline constexpr std::uint8_t kFormatVersion = 1;
/// magic(4) + version(1) + variant(1) + kind(1) + 14 parameter fields(4 each)
inline constexpr std::size_t kHeaderSize = 63;

enum class Kind : std::uint8_t {
  public_key = 1,
  secret_key = 2,
  ciphertext = 3,
};

struct Header {
  Kind kind;
  ParamSet params;
};

struct Ciphertext {
  ParamSet params;
  Vector c;
};

/// Payload elements are packed as consecutive m-bit little-endian strings
/// and the final byte is zero-padded.
Bytes pack_elements(std::span<const gf2m::Element> elems, unsigned m);
std::vector<gf2m::Element> unpack_elements(std::span<const std::uint8_t> bytes, std::size_t count,
                                           const gf2m::Field& field);
std::size_t packed_size(std::size_t count, unsigned m);

Bytes encode_header(Kind kind, const ParamSet& p);
/// Throws ParseError on bad magic, version, kind or parameters.
Header decode_header(std::span<const std::uint8_t> bytes);

Bytes encode_public_key(const scheme::PublicKey& pk);
scheme::PublicKey decode_public_key(std::span<const std::uint8_t> bytes);

Bytes encode_secret_key(const scheme::SecretKey& sk);
scheme::SecretKey decode_secret_key(std::span<const std::uint8_t> bytes);

Bytes encode_ciphertext(const ParamSet& p, const Vector& c);
Ciphertext decode_ciphertext(std::span<const std::uint8_t> bytes);

/// Largest byte payload a k-element message block can carry.
std::size_t message_capacity(const ParamSet& p);
/// 4-byte big-endian length, the data, then zero padding, spread over k
/// elements. Throws InvalidArgument if data exceeds message_capacity.
Vector pack_message(std::span<const std::uint8_t> data, const ParamSet& p, const linalg::FieldPtr& field);
/// Throws ParseError if the length prefix or padding is inconsistent.
Bytes unpack_message(const Vector& m, const ParamSet& p);

}  // namespace gabkron::io
