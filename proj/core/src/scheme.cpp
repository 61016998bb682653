#include "gabkron/scheme.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>

#include "gabkron/errors.hpp"
#include "gabkron/linalg/circulant.hpp"

namespace gabkron::scheme {

namespace {

constexpr int kKeygenAttempts = 64;
constexpr int kMatrixDraws = 64;

Matrix random_full_rank(const FieldPtr& field, std::size_t rows, std::size_t cols, RandomSource& rng) {
  for (int i = 0; i < kMatrixDraws; ++i) {
    Matrix g = Matrix::random(field, rows, cols, rng);
    if (linalg::rank(g) == rows) return g;
  }
  throw GenerationError("no full-rank G1 within retry budget");
}

std::vector<Element> independent_elements(const gf2m::Field& field, std::size_t count,
                                          RandomSource& rng) {
  std::vector<Element> out;
  for (int draws = 0; out.size() < count; ++draws) {
    if (draws > 4096) throw GenerationError("no independent field elements within retry budget");
    out.push_back(field.random_nonzero(rng));
    if (linalg::gf2_rank(out) != out.size()) out.pop_back();
  }
  return out;
}

Vector random_vector_in_span(std::span<const Element> gens, const FieldPtr& field, std::size_t n,
                             RandomSource& rng) {
  Vector v(field, n);
  for (std::size_t i = 0; i < n; ++i) v[i] = random_in_span(gens, *field, rng);
  return v;
}

bool contains(std::span<const std::size_t> set, std::size_t j) {
  return std::find(set.begin(), set.end(), j) != set.end();
}

}  // namespace

std::vector<Element> SubspaceSpec::generators(std::size_t block) const {
  if (block >= selections.size() || selections[block].empty()) return basis;
  std::vector<Element> g;
  for (auto idx : selections[block]) g.push_back(basis.at(idx));
  return g;
}

FieldPtr field_for(const ParamSet& p) { return gf2m::Field::standard(p.m); }

Vector frobenius_support(const Element& alpha, std::size_t n2, const FieldPtr& field) {
  Vector g(field, n2);
  Element x = alpha;
  for (std::size_t i = 0; i < n2; ++i) {
    g[n2 - 1 - i] = x;
    x = field->square(x);
  }
  return g;
}

codes::GabidulinCode inner_code(const ParamSet& p, const Element& alpha, const FieldPtr& field) {
  return codes::GabidulinCode(frobenius_support(alpha, p.n2, field), p.k2);
}

std::vector<Element> span_elements(std::span<const Element> generators, const gf2m::Field& field) {
  std::vector<Element> out{field.zero()};
  for (const auto& g : generators) {
    const std::size_t half = out.size();
    for (std::size_t i = 0; i < half; ++i) out.push_back(out[i] + g);
  }
  return out;
}

Element random_in_span(std::span<const Element> generators, const gf2m::Field& field,
                       RandomSource& rng) {
  Element e = field.zero();
  for (const auto& g : generators) {
    if (rng.coin()) e += g;
  }
  return e;
}

BitMatrix tiled_transform(const BitMatrix& t, std::size_t width) {
  const std::size_t w = t.cols();
  if (w == 0 || width % w != 0) throw InvalidArgument("transform width must divide the block width");
  BitMatrix out(t.rows(), width);
  for (std::size_t r = 0; r < t.rows(); ++r) {
    for (std::size_t c = 0; c < width; ++c) out.set(r, c, t.get(r, c % w));
  }
  return out;
}

Matrix shift_recursion_rows(const Vector& y0, const BitMatrix& t, std::size_t rows) {
  const BitMatrix a = t.rotate_columns(1) * t.inverse();
  Matrix y(y0.field_ptr(), rows, y0.size());
  Vector cur = y0;
  for (std::size_t r = 0; r < rows; ++r) {
    y.set_row(r, cur);
    cur = linalg::mul_base(cur, a);
  }
  return y;
}

XWitness construct_x(const ParamSet& p, std::span<const std::size_t> info_set, const FieldPtr& field,
                     RandomSource& rng) {
  XWitness w;
  w.info_set.assign(info_set.begin(), info_set.end());
  w.x = Matrix(field, p.k, p.n);
  if (p.t1 == 0) return w;

  if (p.variant != Variant::improved) {
    const BitMatrix t = BitMatrix::random_invertible(p.t1, rng);
    Matrix y = shift_recursion_rows(Vector::random(field, p.t1, rng), t, p.k);
    w.x = linalg::mul_base(y, tiled_transform(t, p.n));
    if (!linalg::is_partial_circulant(w.x)) throw StructureViolation("X is not partial circulant");
    w.transforms.push_back(t);
    w.y.push_back(std::move(y));
    return w;
  }

  w.transforms.resize(p.n1);
  w.y.resize(std::size_t{p.k1} * p.n1);
  for (std::size_t j = 0; j < p.n1; ++j) {
    const bool in_set = contains(info_set, j);
    BitMatrix wt;
    if (in_set) {
      // One transform per column block, shared by every row block.
      w.transforms[j] = BitMatrix::random_invertible(p.t1, rng);
      wt = tiled_transform(w.transforms[j], p.n2);
    }
    for (std::size_t i = 0; i < p.k1; ++i) {
      Matrix block;
      if (in_set) {
        Matrix y = shift_recursion_rows(Vector::random(field, p.t1, rng), w.transforms[j], p.k2);
        block = linalg::mul_base(y, wt);
        w.y[i * p.n1 + j] = std::move(y);
      } else {
        block = linalg::partial_circulant(Vector::random(field, p.n2, rng), p.k2);
      }
      if (!linalg::is_partial_circulant(block)) throw StructureViolation("X block is not partial circulant");
      w.x.set_block(i * p.k2, j * p.n2, block);
    }
  }
  return w;
}

SubspaceSpec draw_subspaces(const ParamSet& p, std::span<const std::size_t> info_set,
                            const gf2m::Field& field, RandomSource& rng) {
  SubspaceSpec spec;
  spec.basis = independent_elements(field, p.lambda, rng);
  if (p.variant != Variant::improved) return spec;
  spec.selections.resize(p.n1);
  for (auto j : info_set) {
    // Distinct basis vectors, so dim U_j = lambda' exactly.
    std::vector<std::size_t> idx(p.lambda);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < p.lambda_prime; ++i) {
      const std::size_t r = i + static_cast<std::size_t>(rng.uniform(p.lambda - i));
      std::swap(idx[i], idx[r]);
    }
    idx.resize(p.lambda_prime);
    std::sort(idx.begin(), idx.end());
    spec.selections[j] = std::move(idx);
  }
  return spec;
}

Matrix construct_p(const ParamSet& p, const SubspaceSpec& spec, const FieldPtr& field,
                   RandomSource& rng) {
  for (int attempt = 0; attempt < kMatrixDraws; ++attempt) {
    Matrix pm(field, p.n, p.n);
    for (std::size_t bj = 0; bj < p.n1; ++bj) {
      const auto gens = spec.generators(bj);
      for (std::size_t bi = 0; bi < p.n1; ++bi) {
        pm.set_block(bi * p.n2, bj * p.n2, linalg::circulant(random_vector_in_span(gens, field, p.n2, rng)));
      }
    }
    if (linalg::rank(pm) == p.n) return pm;
  }
  throw GenerationError("no invertible P within retry budget");
}

Vector construct_b(const ParamSet& p, const SubspaceSpec& spec, const FieldPtr& field,
                   RandomSource& rng) {
  for (int attempt = 0; attempt < kMatrixDraws; ++attempt) {
    Vector b = random_vector_in_span(spec.basis, field, p.n, rng);
    if (linalg::rank(linalg::circulant(b)) == p.n) return b;
  }
  throw GenerationError("no invertible circulant P within retry budget");
}

namespace {

KeyGenOutput keygen_improved(const ParamSet& p, const FieldPtr& field, RandomSource& rng) {
  KeyGenOutput out;
  Matrix g1 = random_full_rank(field, p.k1, p.n1, rng);
  const Element alpha = field->find_normal_element(rng);
  codes::KroneckerCode code(g1, inner_code(p, alpha, field));
  const auto& info = code.info_set();

  out.witness.x = construct_x(p, info, field, rng);
  out.witness.subspaces = draw_subspaces(p, info, *field, rng);
  out.witness.p = construct_p(p, out.witness.subspaces, field, rng);
  out.witness.g = code.generator();

  const Matrix p_inv = linalg::circulant_block_invert(out.witness.p, p.n2);
  Matrix g_pub = linalg::circulant_block_compose(out.witness.g + out.witness.x.x, p_inv, p.k2, p.n2);

  out.keys.pk = PublicKey{p, std::move(g_pub)};
  out.keys.sk.params = p;
  out.keys.sk.alpha = alpha;
  out.keys.sk.g1 = std::move(g1);
  out.keys.sk.p = out.witness.p;
  return out;
}

std::optional<KeyGenOutput> keygen_repaired_attempt(const ParamSet& p, const FieldPtr& field,
                                                    RandomSource& rng) {
  KeyGenOutput out;
  Matrix g1 = random_full_rank(field, p.k1, p.n1, rng);
  const Element alpha = field->find_normal_element(rng);
  codes::KroneckerCode code(g1, inner_code(p, alpha, field));

  out.witness.x = construct_x(p, code.info_set(), field, rng);
  out.witness.subspaces = draw_subspaces(p, code.info_set(), *field, rng);
  Vector b = construct_b(p, out.witness.subspaces, field, rng);
  out.witness.p = linalg::circulant(b);
  out.witness.g = code.generator();

  const Matrix m = (out.witness.g + out.witness.x.x) * linalg::inverse(out.witness.p);
  Matrix s;
  try {
    s = linalg::inverse(m.block(0, 0, p.k, p.k));
  } catch (const SingularMatrix&) {
    return std::nullopt;
  }
  Matrix g_pub = s * m;
  if (!(g_pub.block(0, 0, p.k, p.k) == Matrix::identity(field, p.k))) {
    throw StructureViolation("public key is not systematic");
  }

  out.keys.pk = PublicKey{p, std::move(g_pub)};
  out.keys.sk.params = p;
  out.keys.sk.alpha = alpha;
  out.keys.sk.g1 = std::move(g1);
  out.keys.sk.b = std::move(b);
  out.keys.sk.s = std::move(s);
  return out;
}

}  // namespace

KeyGenOutput keygen_with_witness(const ParamSet& p, RandomSource& rng) {
  validate(p);
  const FieldPtr field = field_for(p);
  switch (p.variant) {
    case Variant::improved:
      return keygen_improved(p, field, rng);
    case Variant::repaired:
      for (int attempt = 0; attempt < kKeygenAttempts; ++attempt) {
        if (auto out = keygen_repaired_attempt(p, field, rng)) return std::move(*out);
      }
      throw GenerationError("no systematic public key within retry budget");
    case Variant::original:
      break;
  }
  throw ParamViolation({"key generation is not supported for the original variant"});
}

KeyPair keygen(const ParamSet& p, RandomSource& rng) { return keygen_with_witness(p, rng).keys; }

Vector sample_rank_error(const FieldPtr& field, std::size_t n, std::size_t t, RandomSource& rng) {
  if (t > n || t > field->degree()) throw InvalidArgument("error rank exceeds min(m, n)");
  Vector e(field, n);
  if (t == 0) return e;
  const auto beta = independent_elements(*field, t, rng);
  BitMatrix m;
  for (int draws = 0;; ++draws) {
    if (draws >= 1024) throw GenerationError("no full-rank support matrix within retry budget");
    m = BitMatrix::random(t, n, rng);
    if (m.rank() == t) break;
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < t; ++i) {
      if (m.get(i, j)) e[j] += beta[i];
    }
  }
  return e;
}

Vector encrypt_with_error(const PublicKey& pk, const Vector& m, const Vector& e) {
  if (m.size() != pk.g_pub.rows()) throw InvalidArgument("message length differs from k");
  if (e.size() != pk.g_pub.cols()) throw InvalidArgument("error length differs from n");
  return m * pk.g_pub + e;
}

Vector encrypt(const PublicKey& pk, const Vector& m, RandomSource& rng) {
  return encrypt_with_error(pk, m, sample_rank_error(pk.g_pub.field_ptr(), pk.params.n, pk.params.t, rng));
}

Matrix secret_p(const SecretKey& sk) {
  return sk.params.variant == Variant::repaired ? linalg::circulant(sk.b) : sk.p;
}

Vector decrypt(const SecretKey& sk, const Vector& c) {
  const ParamSet& p = sk.params;
  if (c.size() != p.n) throw InvalidArgument("ciphertext length differs from n");
  const FieldPtr& field = sk.g1.field_ptr();
  codes::KroneckerCode code(sk.g1, inner_code(p, sk.alpha, field));
  const Vector shifted = c * secret_p(sk);
  auto res = code.decode(shifted, code.info_set());
  if (!res.message) {
    std::string what = "decoding failed on block(s)";
    for (auto b : res.failed_blocks) what += " " + std::to_string(b);
    if (res.failed_blocks.empty()) what = "no invertible information set among decoded blocks";
    throw DecryptFailure(what, res.failed_blocks);
  }
  if (p.variant == Variant::repaired) return *res.message * linalg::inverse(sk.s);
  return *res.message;
}

}  // namespace gabkron::scheme
