#include "oracles.hpp"

#include <algorithm>
#include <bitset>
#include <set>
#include <stdexcept>

namespace gabkron::oracle {

namespace {

using Bits = std::bitset<2 * gf2m::kMaxDegree>;

Bits to_bits(const Element& a, unsigned m) {
  Bits b;
  for (unsigned i = 0; i < m; ++i) b[i] = a.bit(i);
  return b;
}

Element from_bits(const Field& f, const Bits& b) {
  gf2m::Words w{};
  for (unsigned i = 0; i < f.degree(); ++i) {
    if (b[i]) w[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  return f.from_words(w);
}

}  // namespace

Element schoolbook_mul(const Field& f, const Element& a, const Element& b) {
  const unsigned m = f.degree();
  const Bits x = to_bits(a, m);
  const Bits y = to_bits(b, m);
  Bits prod;
  for (unsigned i = 0; i < m; ++i) {
    if (y[i]) prod ^= x << i;
  }
  Bits mod;
  for (unsigned e : f.modulus().exponents) mod[e] = true;
  for (unsigned i = 2 * m - 2; i >= m; --i) {
    if (prod[i]) prod ^= mod << (i - m);
  }
  return from_bits(f, prod);
}

Element schoolbook_pow(const Field& f, const Element& a, std::uint64_t e) {
  Element r = f.one();
  for (std::uint64_t i = 0; i < e; ++i) r = schoolbook_mul(f, r, a);
  return r;
}

bool brute_irreducible(std::uint64_t poly) {
  int deg = 63;
  while (deg >= 0 && ((poly >> deg) & 1U) == 0) --deg;
  if (deg < 1 || deg > 20) throw std::invalid_argument("brute_irreducible: degree out of range");
  auto mod = [](std::uint64_t a, std::uint64_t d) {
    int dd = 63;
    while (((d >> dd) & 1U) == 0) --dd;
    for (int i = 63; i >= dd; --i) {
      if ((a >> i) & 1U) a ^= d << (i - dd);
    }
    return a;
  };
  for (std::uint64_t d = 2; d < (std::uint64_t{1} << (deg / 2 + 1)); ++d) {
    if (mod(poly, d) == 0) return false;
  }
  return true;
}

std::size_t span_dimension(const std::vector<Element>& elems) {
  if (!elems.empty() && elems.front().field() != nullptr && elems.front().field()->degree() <= 16) {
    // Small fields: the span fits in a short list of integers.
    std::vector<std::uint32_t> span{0};
    std::size_t dim = 0;
    for (const auto& e : elems) {
      const auto v = static_cast<std::uint32_t>(e.words()[0]);
      bool member = false;
      for (auto s : span) member |= s == v;
      if (member) continue;
      const std::size_t size = span.size();
      for (std::size_t i = 0; i < size; ++i) span.push_back(span[i] ^ v);
      ++dim;
    }
    return dim;
  }
  std::set<gf2m::Words> span{gf2m::Words{}};
  std::size_t dim = 0;
  for (const auto& e : elems) {
    if (span.count(e.words()) != 0) continue;
    std::vector<gf2m::Words> added;
    for (const auto& s : span) {
      gf2m::Words w = s;
      for (std::size_t i = 0; i < w.size(); ++i) w[i] ^= e.words()[i];
      added.push_back(w);
    }
    span.insert(added.begin(), added.end());
    ++dim;
  }
  return dim;
}

std::size_t rank_weight(const Vector& v) {
  return span_dimension(std::vector<Element>(v.begin(), v.end()));
}

Matrix product(const Matrix& a, const Matrix& b) {
  Matrix out(a.field_ptr(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Element acc = a.field().zero();
      for (std::size_t l = 0; l < a.cols(); ++l) acc += a(i, l) * b(l, j);
      out(i, j) = acc;
    }
  }
  return out;
}

Vector product(const Vector& v, const Matrix& m) {
  Vector out(m.field_ptr(), m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Element acc = m.field().zero();
    for (std::size_t l = 0; l < m.rows(); ++l) acc += v[l] * m(l, j);
    out[j] = acc;
  }
  return out;
}

Matrix circulant_rows(const Vector& a, std::size_t k) {
  const std::size_t n = a.size();
  Matrix out(a.field_ptr(), k, n);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) = a[(i + n - j) % n];
  }
  return out;
}

bool rows_shift_right(const Matrix& m) {
  const std::size_t n = m.cols();
  for (std::size_t i = 1; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!(m(i, (j + 1) % n) == m(i - 1, j))) return false;
    }
  }
  return true;
}

bool blocks_shift_right(const Matrix& m, std::size_t k2, std::size_t n2) {
  for (std::size_t r = 0; r < m.rows(); r += k2) {
    for (std::size_t c = 0; c < m.cols(); c += n2) {
      if (!rows_shift_right(m.block(r, c, k2, n2))) return false;
    }
  }
  return true;
}

std::vector<Element> all_elements(const Field& f) {
  if (f.degree() > 12) throw std::invalid_argument("all_elements: field too large");
  std::vector<Element> out;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << f.degree()); ++v) out.push_back(f.from_uint(v));
  return out;
}

std::vector<Vector> all_vectors(const FieldPtr& field, std::size_t k) {
  const auto elems = all_elements(*field);
  std::vector<Vector> out{Vector(field, 0)};
  for (std::size_t pos = 0; pos < k; ++pos) {
    std::vector<Vector> next;
    next.reserve(out.size() * elems.size());
    for (const auto& prefix : out) {
      for (const auto& e : elems) {
        std::vector<Element> entries(prefix.begin(), prefix.end());
        entries.push_back(e);
        next.emplace_back(field, std::move(entries));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::vector<Vector> all_codewords(const codes::GabidulinCode& code) {
  std::vector<Vector> out;
  for (const auto& u : all_vectors(code.field_ptr(), code.dimension())) {
    out.push_back(product(u, code.generator()));
  }
  return out;
}

Nearest nearest_codewords(const std::vector<Vector>& codewords, const Vector& y) {
  Nearest best;
  best.distance = y.size() + 1;
  for (std::size_t i = 0; i < codewords.size(); ++i) {
    const std::size_t d = oracle::rank_weight(y - codewords[i]);
    if (d < best.distance) {
      best.distance = d;
      best.indices = {i};
    } else if (d == best.distance) {
      best.indices.push_back(i);
    }
  }
  return best;
}

std::size_t min_rank_distance(const std::vector<Vector>& codewords) {
  std::size_t best = codewords.empty() ? 0 : codewords.front().size() + 1;
  for (const auto& c : codewords) {
    if (c.is_zero()) continue;
    best = std::min(best, oracle::rank_weight(c));
  }
  return best;
}

std::vector<Vector> rank_one_vectors(const FieldPtr& field, std::size_t n) {
  std::vector<Vector> out{Vector(field, n)};
  const auto elems = all_elements(*field);
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    for (std::size_t b = 1; b < elems.size(); ++b) {
      Vector v(field, n);
      for (std::size_t j = 0; j < n; ++j) {
        if ((mask >> j) & 1U) v[j] = elems[b];
      }
      out.push_back(v);
    }
  }
  return out;
}

std::vector<Vector> circulant_scramblers(const Matrix& m) {
  const std::size_t k = m.rows();
  std::vector<Vector> out;
  for (const auto& a : all_vectors(m.field_ptr(), k)) {
    const Matrix sm = product(circulant_rows(a, k), m);
    bool systematic = true;
    for (std::size_t i = 0; i < k && systematic; ++i) {
      for (std::size_t j = 0; j < k && systematic; ++j) {
        systematic = i == j ? sm(i, j).is_one() : sm(i, j).is_zero();
      }
    }
    if (systematic) out.push_back(a);
  }
  return out;
}

bool is_inverse(const Matrix& a, const Matrix& inverse) {
  if (a.rows() != a.cols() || inverse.rows() != a.rows() || inverse.cols() != a.cols()) return false;
  const Matrix p = product(a, inverse);
  for (std::size_t i = 0; i < p.rows(); ++i) {
    for (std::size_t j = 0; j < p.cols(); ++j) {
      if (i == j ? !p(i, j).is_one() : !p(i, j).is_zero()) return false;
    }
  }
  return true;
}

}  // namespace gabkron::oracle
