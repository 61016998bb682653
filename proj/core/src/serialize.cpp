#include "gabkron/serialize.hpp"

#include <algorithm>
#include <array>

#include "gabkron/errors.hpp"
#include "gabkron/linalg/circulant.hpp"

namespace gabkron::io {

namespace {

constexpr std::array<std::uint8_t, 4> kMagic = {'G', 'K', 'P', 'C'};

void put_u32(Bytes& out, std::uint32_t v) {
  for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<std::uint8_t>(v >> s));
}

std::uint32_t get_u32(std::span<const std::uint8_t> in, std::size_t off) {
  std::uint32_t v = 0;
  for (std::size_t i = 0; i < 4; ++i) v = (v << 8) | in[off + i];
  return v;
}

std::vector<std::uint32_t*> field_refs(ParamSet& p) {
  return {&p.q, &p.m, &p.n, &p.k, &p.n1, &p.n2, &p.k1, &p.k2,
          &p.t, &p.t1, &p.t2, &p.lambda, &p.lambda_prime, &p.security};
}

// Sequential reader over a packed payload of known element count.
class PayloadReader {
 public:
  PayloadReader(std::span<const std::uint8_t> payload, const gf2m::Field& field, std::size_t total)
      {
    if (payload.size() != packed_size(total, field.degree())) {
      throw ParseError("payload has " + std::to_string(payload.size()) + " bytes, expected " +
                       std::to_string(packed_size(total, field.degree())));
    }
    all_ = unpack_elements(payload, total, field);
  }

  std::vector<gf2m::Element> take(std::size_t count) {
    if (pos_ + count > all_.size()) throw ParseError("payload too short");
    std::vector<gf2m::Element> out(all_.begin() + static_cast<std::ptrdiff_t>(pos_),
                                   all_.begin() + static_cast<std::ptrdiff_t>(pos_ + count));
    pos_ += count;
    return out;
  }

  Matrix take_matrix(const linalg::FieldPtr& f, std::size_t rows, std::size_t cols) {
    Matrix m(f, rows, cols);
    auto e = take(rows * cols);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = e[i * cols + j];
    }
    return m;
  }

 private:
  std::vector<gf2m::Element> all_;
  std::size_t pos_ = 0;
};

void append_matrix(std::vector<gf2m::Element>& out, const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto r = m.row_span(i);
    out.insert(out.end(), r.begin(), r.end());
  }
}

Bytes finish(Kind kind, const ParamSet& p, const std::vector<gf2m::Element>& elems) {
  Bytes out = encode_header(kind, p);
  Bytes payload = pack_elements(elems, p.m);
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

Header expect(std::span<const std::uint8_t> bytes, Kind kind) {
  Header h = decode_header(bytes);
  if (h.kind != kind) throw ParseError("unexpected artifact kind");
  if (h.params.variant == Variant::original) throw ParseError("original-variant artifacts are not supported");
  return h;
}

}  // namespace

std::size_t packed_size(std::size_t count, unsigned m) { return (count * m + 7) / 8; }

Bytes pack_elements(std::span<const gf2m::Element> elems, unsigned m) {
  Bytes out(packed_size(elems.size(), m), 0);
  std::size_t bit = 0;
  for (const auto& e : elems) {
    const auto& w = e.words();
    for (unsigned i = 0; i < m; ++i, ++bit) {
      if ((w[i / 64] >> (i % 64)) & 1U) out[bit / 8] |= static_cast<std::uint8_t>(1U << (bit % 8));
    }
  }
  return out;
}

std::vector<gf2m::Element> unpack_elements(std::span<const std::uint8_t> bytes, std::size_t count,
                                           const gf2m::Field& field) {
  const unsigned m = field.degree();
  if (bytes.size() < packed_size(count, m)) throw ParseError("packed element data truncated");
  std::vector<gf2m::Element> out;
  out.reserve(count);
  std::size_t bit = 0;
  for (std::size_t c = 0; c < count; ++c) {
    gf2m::Words w{};
    for (unsigned i = 0; i < m; ++i, ++bit) {
      if ((bytes[bit / 8] >> (bit % 8)) & 1U) w[i / 64] |= std::uint64_t{1} << (i % 64);
    }
    out.push_back(field.from_words(w));
  }
  for (; bit < packed_size(count, m) * 8; ++bit) {
    if ((bytes[bit / 8] >> (bit % 8)) & 1U) throw ParseError("nonzero padding bits");
  }
  return out;
}

Bytes encode_header(Kind kind, const ParamSet& p) {
  Bytes out(kMagic.begin(), kMagic.end());
  out.push_back(kFormatVersion);
  out.push_back(static_cast<std::uint8_t>(p.variant));
  out.push_back(static_cast<std::uint8_t>(kind));
  ParamSet copy = p;
  for (auto* f : field_refs(copy)) put_u32(out, *f);
  return out;
}

Header decode_header(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderSize) throw ParseError("file shorter than header");
  if (!std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) throw ParseError("bad magic");
  if (bytes[4] != kFormatVersion) throw ParseError("unsupported format version " + std::to_string(bytes[4]));
  Header h{};
  const std::uint8_t variant = bytes[5];
  if (variant > 2) throw ParseError("unknown variant tag " + std::to_string(variant));
  h.params.variant = static_cast<Variant>(variant);
  const std::uint8_t kind = bytes[6];
  if (kind < 1 || kind > 3) throw ParseError("unknown artifact kind " + std::to_string(kind));
  h.kind = static_cast<Kind>(kind);
  std::size_t off = 7;
  for (auto* f : field_refs(h.params)) {
    *f = get_u32(bytes, off);
    off += 4;
  }
  auto bad = violations(h.params);
  if (!bad.empty()) throw ParseError("invalid parameters in header: " + bad.front());
  for (const auto& named : registry()) {
    ParamSet probe = h.params;
    probe.name = named.name;
    if (probe == named) h.params.name = named.name;
  }
  return h;
}

Bytes encode_public_key(const scheme::PublicKey& pk) {
  const ParamSet& p = pk.params;
  std::vector<gf2m::Element> elems;
  if (p.variant == Variant::improved) {
    for (std::size_t bi = 0; bi < p.k1; ++bi) {
      for (std::size_t bj = 0; bj < p.n1; ++bj) {
        const auto r = pk.g_pub.row_span(bi * p.k2);
        elems.insert(elems.end(), r.begin() + static_cast<std::ptrdiff_t>(bj * p.n2),
                     r.begin() + static_cast<std::ptrdiff_t>((bj + 1) * p.n2));
      }
    }
  } else {
    append_matrix(elems, pk.g_pub.block(0, p.k, p.k, p.n - p.k));
  }
  return finish(Kind::public_key, p, elems);
}

scheme::PublicKey decode_public_key(std::span<const std::uint8_t> bytes) {
  Header h = expect(bytes, Kind::public_key);
  const ParamSet& p = h.params;
  const auto field = scheme::field_for(p);
  const auto payload = bytes.subspan(kHeaderSize);
  scheme::PublicKey pk{p, Matrix(field, p.k, p.n)};
  if (p.variant == Variant::improved) {
    PayloadReader rd(payload, *field, std::size_t{p.k1} * p.n1 * p.n2);
    for (std::size_t bi = 0; bi < p.k1; ++bi) {
      for (std::size_t bj = 0; bj < p.n1; ++bj) {
        Vector first(field, rd.take(p.n2));
        pk.g_pub.set_block(bi * p.k2, bj * p.n2, linalg::circulant_from_first_row(first, p.k2));
      }
    }
  } else {
    PayloadReader rd(payload, *field, std::size_t{p.k} * (p.n - p.k));
    pk.g_pub.set_block(0, 0, Matrix::identity(field, p.k));
    pk.g_pub.set_block(0, p.k, rd.take_matrix(field, p.k, p.n - p.k));
  }
  return pk;
}

Bytes encode_secret_key(const scheme::SecretKey& sk) {
  const ParamSet& p = sk.params;
  std::vector<gf2m::Element> elems{sk.alpha};
  if (p.variant == Variant::improved) {
    for (std::size_t bi = 0; bi < p.n1; ++bi) {
      for (std::size_t bj = 0; bj < p.n1; ++bj) {
        const auto r = sk.p.row_span(bi * p.n2);
        elems.insert(elems.end(), r.begin() + static_cast<std::ptrdiff_t>(bj * p.n2),
                     r.begin() + static_cast<std::ptrdiff_t>((bj + 1) * p.n2));
      }
    }
    append_matrix(elems, sk.g1);
  } else {
    append_matrix(elems, sk.g1);
    elems.insert(elems.end(), sk.b.begin(), sk.b.end());
    append_matrix(elems, sk.s);
  }
  return finish(Kind::secret_key, p, elems);
}

scheme::SecretKey decode_secret_key(std::span<const std::uint8_t> bytes) {
  Header h = expect(bytes, Kind::secret_key);
  const ParamSet& p = h.params;
  const auto field = scheme::field_for(p);
  const auto payload = bytes.subspan(kHeaderSize);
  scheme::SecretKey sk;
  sk.params = p;
  const std::size_t g1_count = std::size_t{p.k1} * p.n1;
  if (p.variant == Variant::improved) {
    PayloadReader rd(payload, *field, 1 + std::size_t{p.n1} * p.n1 * p.n2 + g1_count);
    sk.alpha = rd.take(1).front();
    sk.p = Matrix(field, p.n, p.n);
    for (std::size_t bi = 0; bi < p.n1; ++bi) {
      for (std::size_t bj = 0; bj < p.n1; ++bj) {
        Vector first(field, rd.take(p.n2));
        sk.p.set_block(bi * p.n2, bj * p.n2, linalg::circulant_from_first_row(first, p.n2));
      }
    }
    sk.g1 = rd.take_matrix(field, p.k1, p.n1);
  } else {
    PayloadReader rd(payload, *field, 1 + g1_count + p.n + std::size_t{p.k} * p.k);
    sk.alpha = rd.take(1).front();
    sk.g1 = rd.take_matrix(field, p.k1, p.n1);
    sk.b = Vector(field, rd.take(p.n));
    sk.s = rd.take_matrix(field, p.k, p.k);
  }
  if (!field->is_normal(sk.alpha)) throw ParseError("secret key alpha is not a normal element");
  if (linalg::rank(sk.g1) != p.k1) throw ParseError("secret key G1 is rank deficient");
  return sk;
}

Bytes encode_ciphertext(const ParamSet& p, const Vector& c) {
  if (c.size() != p.n) throw InvalidArgument("ciphertext length differs from n");
  return finish(Kind::ciphertext, p, std::vector<gf2m::Element>(c.begin(), c.end()));
}

Ciphertext decode_ciphertext(std::span<const std::uint8_t> bytes) {
  Header h = expect(bytes, Kind::ciphertext);
  const auto field = scheme::field_for(h.params);
  PayloadReader rd(bytes.subspan(kHeaderSize), *field, h.params.n);
  return Ciphertext{h.params, Vector(field, rd.take(h.params.n))};
}

std::size_t message_capacity(const ParamSet& p) {
  const std::size_t bytes = std::size_t{p.k} * p.m / 8;
  return bytes < 4 ? 0 : bytes - 4;
}

Vector pack_message(std::span<const std::uint8_t> data, const ParamSet& p, const linalg::FieldPtr& field) {
  if (data.size() > message_capacity(p)) {
    throw InvalidArgument("message of " + std::to_string(data.size()) + " bytes exceeds capacity " +
                          std::to_string(message_capacity(p)));
  }
  Bytes buf(packed_size(p.k, p.m), 0);
  const auto len = static_cast<std::uint32_t>(data.size());
  for (int i = 0; i < 4; ++i) buf[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(len >> (24 - 8 * i));
  std::copy(data.begin(), data.end(), buf.begin() + 4);
  return Vector(field, unpack_elements(buf, p.k, *field));
}

Bytes unpack_message(const Vector& m, const ParamSet& p) {
  if (m.size() != p.k) throw InvalidArgument("message length differs from k");
  const Bytes buf = pack_elements(m.entries(), p.m);
  const std::size_t usable = std::size_t{p.k} * p.m / 8;
  if (usable < 4) throw ParseError("message block too small for a length prefix");
  const std::uint32_t len = get_u32(buf, 0);
  if (len > message_capacity(p)) throw ParseError("message length header exceeds capacity");
  const auto tail_begin = buf.begin() + 4 + static_cast<std::ptrdiff_t>(len);
  if (std::any_of(tail_begin, buf.end(), [](std::uint8_t b) { return b != 0; })) {
    throw ParseError("message padding is not zero");
  }
  return Bytes(buf.begin() + 4, tail_begin);
}

}  // namespace gabkron::io
