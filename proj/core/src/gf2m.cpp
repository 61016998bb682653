#include "gabkron/gf2m.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <map>
#include <mutex>

#include "gabkron/errors.hpp"
#include "gabkron/linalg/bitmatrix.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define GABKRON_HAVE_X86_CLMUL 1
#endif

namespace gabkron::gf2m {

namespace {

// ---------------------------------------------------------------------------
// Dense GF(2)[x] polynomials, used only for the irreducibility test.

using Dense = std::vector<std::uint64_t>;

int dense_degree(const Dense& a) {
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != 0) return static_cast<int>(64 * i + 63 - std::countl_zero(a[i]));
  }
  return -1;
}

void dense_trim(Dense& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Dense dense_from(const SparsePoly& p) {
  Dense d(p.degree() / 64 + 1, 0);
  for (unsigned e : p.exponents) d[e / 64] ^= std::uint64_t{1} << (e % 64);
  return d;
}

void xor_shifted(Dense& a, const Dense& b, unsigned shift) {
  const std::size_t ws = shift / 64;
  const unsigned bs = shift % 64;
  const std::size_t need = b.size() + ws + 1;
  if (a.size() < need) a.resize(need, 0);
  for (std::size_t i = 0; i < b.size(); ++i) {
    a[i + ws] ^= b[i] << bs;
    if (bs != 0) a[i + ws + 1] ^= b[i] >> (64 - bs);
  }
}

Dense dense_mod(Dense a, const Dense& f) {
  const int df = dense_degree(f);
  for (int da = dense_degree(a); da >= df; da = dense_degree(a)) {
    xor_shifted(a, f, static_cast<unsigned>(da - df));
  }
  dense_trim(a);
  return a;
}

Dense dense_square_mod(const Dense& a, const Dense& f) {
  Dense sq(2 * a.size() + 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (unsigned b = 0; b < 64; ++b) {
      if ((a[i] >> b) & 1U) {
        const std::size_t pos = 2 * (64 * i + b);
        sq[pos / 64] |= std::uint64_t{1} << (pos % 64);
      }
    }
  }
  return dense_mod(std::move(sq), f);
}

Dense dense_gcd(Dense a, Dense b) {
  dense_trim(a);
  dense_trim(b);
  while (!b.empty()) {
    a = dense_mod(std::move(a), b);
    std::swap(a, b);
  }
  return a;
}

// ---------------------------------------------------------------------------
// Carry-less multiplication kernels: out[0 .. 2n) = a * b over GF(2)[x].

void clmul64_soft(std::uint64_t a, std::uint64_t b, std::uint64_t& lo, std::uint64_t& hi) {
  // 4-bit window over b; table entries hold a * j for j < 16 (up to 67 bits).
  std::uint64_t tlo[16];
  std::uint64_t thi[16];
  tlo[0] = 0;
  thi[0] = 0;
  for (unsigned j = 1; j < 16; ++j) {
    if (j & 1U) {
      tlo[j] = tlo[j - 1] ^ a;
      thi[j] = thi[j - 1];
    } else {
      tlo[j] = tlo[j / 2] << 1;
      thi[j] = (thi[j / 2] << 1) | (tlo[j / 2] >> 63);
    }
  }
  lo = 0;
  hi = 0;
  for (int shift = 60; shift >= 0; shift -= 4) {
    hi = (hi << 4) | (lo >> 60);
    lo <<= 4;
    const unsigned nib = (b >> shift) & 0xF;
    lo ^= tlo[nib];
    hi ^= thi[nib];
  }
}

void mul_kernel_soft(const std::uint64_t* a, const std::uint64_t* b, std::size_t n,
                     std::uint64_t* out) {
  std::fill(out, out + 2 * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      std::uint64_t lo;
      std::uint64_t hi;
      clmul64_soft(a[i], b[j], lo, hi);
      out[i + j] ^= lo;
      out[i + j + 1] ^= hi;
    }
  }
}

#ifdef GABKRON_HAVE_X86_CLMUL
__attribute__((target("pclmul,sse4.1"))) void mul_kernel_clmul(const std::uint64_t* a,
                                                               const std::uint64_t* b,
                                                               std::size_t n,
                                                               std::uint64_t* out) {
  std::fill(out, out + 2 * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    const __m128i va = _mm_cvtsi64_si128(static_cast<long long>(a[i]));
    for (std::size_t j = 0; j < n; ++j) {
      const __m128i vb = _mm_cvtsi64_si128(static_cast<long long>(b[j]));
      const __m128i r = _mm_clmulepi64_si128(va, vb, 0x00);
      out[i + j] ^= static_cast<std::uint64_t>(_mm_cvtsi128_si64(r));
      out[i + j + 1] ^= static_cast<std::uint64_t>(_mm_extract_epi64(r, 1));
    }
  }
}
#endif

bool cpu_has_clmul() {
#ifdef GABKRON_HAVE_X86_CLMUL
  __builtin_cpu_init();
  return __builtin_cpu_supports("pclmul") && __builtin_cpu_supports("sse4.1");
#else
  return false;
#endif
}

// Registry moduli, as produced by search_modulus (checked by the unit tests).
struct RegistryEntry {
  unsigned m;
  std::initializer_list<unsigned> exponents;
};

}  // namespace

// ---------------------------------------------------------------------------

std::string SparsePoly::to_string() const {
  std::string s;
  for (unsigned e : exponents) {
    if (!s.empty()) s += "+";
    if (e == 0) {
      s += "1";
    } else if (e == 1) {
      s += "x";
    } else {
      s += "x^" + std::to_string(e);
    }
  }
  return s.empty() ? "0" : s;
}

bool is_irreducible(const SparsePoly& f) {
  const unsigned m = f.degree();
  if (m < 1 || f.exponents.empty()) return false;
  const Dense fd = dense_from(f);
  if ((fd[0] & 1U) == 0) return m == 1 && f.exponents.size() == 1;  // divisible by x
  Dense h{2};                                                         // x
  for (unsigned i = 1; i <= m / 2; ++i) {
    h = dense_square_mod(h, fd);
    Dense h_minus_x = h;
    if (h_minus_x.empty()) h_minus_x.push_back(0);
    h_minus_x[0] ^= 2;
    const Dense g = dense_gcd(fd, h_minus_x);
    if (dense_degree(g) > 0) return false;
  }
  return true;
}

SparsePoly search_modulus(unsigned m) {
  if (m < 2 || m > kMaxDegree) throw InvalidArgument("modulus degree out of range");
  for (unsigned a = 1; a < m; ++a) {
    SparsePoly f{{m, a, 0}};
    if (is_irreducible(f)) return f;
  }
  for (unsigned a = 3; a < m; ++a) {
    for (unsigned b = 2; b < a; ++b) {
      for (unsigned c = 1; c < b; ++c) {
        SparsePoly f{{m, a, b, c, 0}};
        if (is_irreducible(f)) return f;
      }
    }
  }
  throw InvalidArgument("no irreducible trinomial or pentanomial of degree " + std::to_string(m));
}

// ---------------------------------------------------------------------------
// Element

bool Element::is_zero() const noexcept {
  return std::all_of(w_.begin(), w_.end(), [](std::uint64_t x) { return x == 0; });
}

bool Element::is_one() const noexcept {
  if (w_[0] != 1) return false;
  return std::all_of(w_.begin() + 1, w_.end(), [](std::uint64_t x) { return x == 0; });
}

std::string Element::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const unsigned m = field_ ? field_->degree() : 64;
  std::string s;
  for (int nib = static_cast<int>((m + 3) / 4) - 1; nib >= 0; --nib) {
    const unsigned pos = 4 * static_cast<unsigned>(nib);
    s += kDigits[(w_[pos / 64] >> (pos % 64)) & 0xF];
  }
  return s;
}

Element& Element::operator+=(const Element& rhs) {
  const Field& f = Field::common(*this, rhs);
  for (std::size_t i = 0; i < f.words(); ++i) w_[i] ^= rhs.w_[i];
  return *this;
}

Element& Element::operator*=(const Element& rhs) {
  const Field& f = Field::common(*this, rhs);
  Words out{};
  f.mul_words(w_.data(), rhs.w_.data(), out.data());
  w_ = out;
  return *this;
}

Element operator/(const Element& a, const Element& b) {
  const Field& f = Field::common(a, b);
  return f.mul(a, f.inv(b));
}

bool operator==(const Element& a, const Element& b) noexcept {
  if (a.field_ != b.field_ && a.field_ != nullptr && b.field_ != nullptr &&
      !a.field_->compatible(*b.field_)) {
    return false;
  }
  return a.w_ == b.w_;
}

// ---------------------------------------------------------------------------
// Field

Field::Field(SparsePoly modulus) : modulus_(std::move(modulus)) {
  auto& ex = modulus_.exponents;
  std::sort(ex.begin(), ex.end(), std::greater<>());
  if (std::adjacent_find(ex.begin(), ex.end()) != ex.end()) {
    throw InvalidArgument("modulus has repeated exponents");
  }
  m_ = modulus_.degree();
  if (m_ < 2 || m_ > kMaxDegree) throw InvalidArgument("field degree must lie in [2, 512]");
  if (!is_irreducible(modulus_)) {
    throw InvalidArgument("modulus " + modulus_.to_string() + " is reducible over GF(2)");
  }
  nw_ = (m_ + 63) / 64;
  low_terms_.assign(ex.begin() + 1, ex.end());
  top_mask_ = (m_ % 64 == 0) ? ~std::uint64_t{0} : ((std::uint64_t{1} << (m_ % 64)) - 1);
#ifdef GABKRON_HAVE_X86_CLMUL
  kernel_ = cpu_has_clmul() ? &mul_kernel_clmul : &mul_kernel_soft;
#else
  kernel_ = &mul_kernel_soft;
#endif
}

SparsePoly Field::standard_modulus(unsigned m) {
  static const RegistryEntry kRegistry[] = {
#include "modulus_registry.inc"
  };
  for (const auto& e : kRegistry) {
    if (e.m == m) return SparsePoly{std::vector<unsigned>(e.exponents)};
  }
  return search_modulus(m);
}

std::shared_ptr<const Field> Field::standard(unsigned m) {
  static std::mutex mu;
  static std::map<unsigned, std::shared_ptr<const Field>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  auto f = std::make_shared<const Field>(standard_modulus(m));
  cache.emplace(m, f);
  return f;
}

const Field& Field::common(const Element& a, const Element& b) {
  if (a.field_ == nullptr || b.field_ == nullptr) throw FieldMismatch();
  if (a.field_ != b.field_ && !a.field_->compatible(*b.field_)) throw FieldMismatch();
  return *a.field_;
}

void Field::check_owned(const Element& a) const {
  if (a.field_ == nullptr || (a.field_ != this && !compatible(*a.field_))) throw FieldMismatch();
}

Element Field::one() const {
  Words w{};
  w[0] = 1;
  return Element(this, w);
}

Element Field::generator() const {
  Words w{};
  w[0] = 2;
  return Element(this, w);
}

Element Field::from_uint(std::uint64_t v) const {
  if (m_ < 64 && (v >> m_) != 0) throw InvalidArgument("integer does not fit in GF(2^m)");
  Words w{};
  w[0] = v;
  return Element(this, w);
}

Element Field::from_words(const Words& w) const {
  for (std::size_t i = nw_; i < kMaxWords; ++i) {
    if (w[i] != 0) throw InvalidArgument("coefficient bits above degree");
  }
  if ((w[nw_ - 1] & ~top_mask_) != 0) throw InvalidArgument("coefficient bits above degree");
  return Element(this, w);
}

void Field::reduce(std::uint64_t* p, std::uint64_t* out) const {
  const std::size_t pw = 2 * nw_;
  const std::size_t ws = m_ / 64;
  const unsigned bs = m_ % 64;
  std::uint64_t h[2 * kMaxWords];
  for (;;) {
    // h = p >> m, then p mod x^m.
    const std::size_t hw = pw - ws;
    std::uint64_t any = 0;
    for (std::size_t i = 0; i < hw; ++i) {
      std::uint64_t v = p[i + ws] >> bs;
      if (bs != 0 && i + ws + 1 < pw) v |= p[i + ws + 1] << (64 - bs);
      h[i] = v;
      any |= v;
    }
    if (any == 0) break;
    p[ws] &= bs == 0 ? 0 : ((std::uint64_t{1} << bs) - 1);
    for (std::size_t i = ws + 1; i < pw; ++i) p[i] = 0;
    // x^m == sum of the low terms.
    for (unsigned e : low_terms_) {
      const std::size_t es = e / 64;
      const unsigned eb = e % 64;
      for (std::size_t i = 0; i < hw && i + es < pw; ++i) {
        if (h[i] == 0) continue;
        p[i + es] ^= h[i] << eb;
        if (eb != 0 && i + es + 1 < pw) p[i + es + 1] ^= h[i] >> (64 - eb);
      }
    }
  }
  std::copy(p, p + nw_, out);
}

void Field::mul_words(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out) const {
  std::uint64_t prod[2 * kMaxWords];
  kernel_(a, b, nw_, prod);
  reduce(prod, out);
}

void Field::axpy(std::span<Element> dst, std::span<const Element> src, const Element& s) const {
  check_owned(s);
  if (s.is_zero()) return;
  const std::size_t n = std::min(dst.size(), src.size());
  if (s.is_one()) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t w = 0; w < nw_; ++w) dst[i].w_[w] ^= src[i].w_[w];
    }
    return;
  }
  std::uint64_t t[kMaxWords];
  for (std::size_t i = 0; i < n; ++i) {
    if (src[i].is_zero()) continue;
    mul_words(s.w_.data(), src[i].w_.data(), t);
    for (std::size_t w = 0; w < nw_; ++w) dst[i].w_[w] ^= t[w];
  }
}

void Field::scale(std::span<Element> v, const Element& s) const {
  check_owned(s);
  std::uint64_t t[kMaxWords];
  for (auto& e : v) {
    mul_words(s.w_.data(), e.w_.data(), t);
    std::copy(t, t + nw_, e.w_.begin());
  }
}

Element Field::add(const Element& a, const Element& b) const {
  check_owned(a);
  return a + b;
}

Element Field::mul(const Element& a, const Element& b) const {
  check_owned(a);
  return a * b;
}

Element Field::square(const Element& a) const {
  check_owned(a);
  Words out{};
  mul_words(a.w_.data(), a.w_.data(), out.data());
  return Element(this, out);
}

Element Field::inv(const Element& a) const {
  check_owned(a);
  if (a.is_zero()) throw DivisionByZero();
  // Binary extended Euclid (Hankerson-Menezes-Vanstone, Alg. 2.49) on
  // polynomials of up to m+1 bits.
  constexpr std::size_t W = kMaxWords + 1;
  using Big = std::array<std::uint64_t, W>;
  const std::size_t n = nw_ + 1;
  Big u{};
  Big v{};
  Big g1{};
  Big g2{};
  std::copy(a.w_.begin(), a.w_.begin() + static_cast<std::ptrdiff_t>(nw_), u.begin());
  for (unsigned e : modulus_.exponents) v[e / 64] ^= std::uint64_t{1} << (e % 64);
  const Big f = v;
  g1[0] = 1;

  auto is_one = [n](const Big& x) {
    if (x[0] != 1) return false;
    for (std::size_t i = 1; i < n; ++i)
      if (x[i] != 0) return false;
    return true;
  };
  auto degree = [n](const Big& x) {
    for (std::size_t i = n; i-- > 0;) {
      if (x[i] != 0) return static_cast<int>(64 * i + 63 - std::countl_zero(x[i]));
    }
    return -1;
  };
  auto shr1 = [n](Big& x) {
    for (std::size_t i = 0; i < n; ++i) {
      x[i] >>= 1;
      if (i + 1 < n) x[i] |= x[i + 1] << 63;
    }
  };
  auto xor_into = [n](Big& x, const Big& y) {
    for (std::size_t i = 0; i < n; ++i) x[i] ^= y[i];
  };
  auto halve = [&](Big& x, Big& g) {
    while ((x[0] & 1U) == 0) {
      shr1(x);
      if (g[0] & 1U) xor_into(g, f);
      shr1(g);
    }
  };

  while (!is_one(u) && !is_one(v)) {
    halve(u, g1);
    halve(v, g2);
    if (is_one(u) || is_one(v)) break;
    if (degree(u) > degree(v)) {
      xor_into(u, v);
      xor_into(g1, g2);
    } else {
      xor_into(v, u);
      xor_into(g2, g1);
    }
  }
  const Big& r = is_one(u) ? g1 : g2;
  Words w{};
  std::copy(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(nw_), w.begin());
  return Element(this, w);
}

Element Field::frobenius(const Element& a, unsigned i) const {
  check_owned(a);
  Words cur = a.w_;
  Words next{};
  for (unsigned s = 0; s < i % m_; ++s) {
    mul_words(cur.data(), cur.data(), next.data());
    cur = next;
  }
  return Element(this, cur);
}

bool Field::is_normal(const Element& a) const {
  check_owned(a);
  std::vector<Element> orbit;
  orbit.reserve(m_);
  Element cur(this, a.w_);
  for (unsigned i = 0; i < m_; ++i) {
    orbit.push_back(cur);
    cur = square(cur);
  }
  return linalg::gf2_rank(orbit) == m_;
}

Element Field::random(RandomSource& rng) const {
  Words w{};
  for (std::size_t i = 0; i < nw_; ++i) w[i] = rng.next_u64();
  w[nw_ - 1] &= top_mask_;
  return Element(this, w);
}

Element Field::random_nonzero(RandomSource& rng) const {
  for (;;) {
    Element e = random(rng);
    if (!e.is_zero()) return e;
  }
}

Element Field::find_normal_element(std::span<const std::uint8_t> seed) const {
  SplitMix64 rng = SplitMix64::from_seed(seed);
  return find_normal_element(rng);
}

Element Field::find_normal_element(RandomSource& rng) const {
  constexpr int kCap = 4096;
  for (int attempt = 0; attempt < kCap; ++attempt) {
    Element e = random(rng);
    if (is_normal(e)) return e;
  }
  throw GenerationError("no normal element within 4096 draws");
}

void Field::encode_into(const Element& a, Bytes& out) const {
  check_owned(a);
  for (std::size_t b = 0; b < byte_length(); ++b) {
    out.push_back(static_cast<std::uint8_t>(a.w_[b / 8] >> (8 * (b % 8))));
  }
}

Bytes Field::encode(const Element& a) const {
  Bytes out;
  out.reserve(byte_length());
  encode_into(a, out);
  return out;
}

Element Field::decode(std::span<const std::uint8_t> bytes) const {
  if (bytes.size() != byte_length()) throw ParseError("field element has wrong byte length");
  Words w{};
  for (std::size_t b = 0; b < bytes.size(); ++b) {
    w[b / 8] |= std::uint64_t{bytes[b]} << (8 * (b % 8));
  }
  if ((w[nw_ - 1] & ~top_mask_) != 0) throw ParseError("field element has bits above degree");
  return Element(this, w);
}

}  // namespace gabkron::gf2m
