#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gabkron/codes/kronecker.hpp"
#include "gabkron/linalg/bitmatrix.hpp"
#include "gabkron/linalg/matrix.hpp"
#include "gabkron/params.hpp"
#include "gabkron/random.hpp"

namespace gabkron::scheme {

using gf2m::Element;
using linalg::BitMatrix;
using linalg::FieldPtr;
using linalg::Matrix;
using linalg::Vector;

/// Basis of the lambda-dimensional subspace V and, for each column block in
/// the information set, the indices of the basis vectors spanning U_i.
struct SubspaceSpec {
  std::vector<Element> basis;
  /// One entry per column block; empty for blocks outside the information set.
  std::vector<std::vector<std::size_t>> selections;

  /// Generators of the subspace allowed in column block j.
  std::vector<Element> generators(std::size_t block) const;
};

/// X together with the factors it was built from. For the improved variant
/// `transforms` and `y` are indexed by column block (transforms) and by
/// i * n1 + j (y); entries for blocks outside the information set are empty.
/// For the repaired variant both hold a single entry covering all of X.
struct XWitness {
  Matrix x;
  std::vector<std::size_t> info_set;
  std::vector<BitMatrix> transforms;
  std::vector<Matrix> y;
};

struct PublicKey {
  ParamSet params;
  Matrix g_pub;
};

/// Improved keys use (alpha, g1, p). Repaired keys use (alpha, g1, b, s).
struct SecretKey {
  ParamSet params;
  Element alpha;
  Matrix g1;
  Matrix p;
  Vector b;
  Matrix s;
};

struct KeyPair {
  PublicKey pk;
  SecretKey sk;
};

/// Intermediate values of key generation, for tests and the audit.
struct KeyWitness {
  XWitness x;
  SubspaceSpec subspaces;
  Matrix g;
  Matrix p;
};

struct KeyGenOutput {
  KeyPair keys;
  KeyWitness witness;
};

FieldPtr field_for(const ParamSet& p);

/// (alpha^[n2-1], ..., alpha^[1], alpha).
Vector frobenius_support(const Element& alpha, std::size_t n2, const FieldPtr& field);
/// Gabidulin code with support frobenius_support(alpha, n2) and dimension k2.
codes::GabidulinCode inner_code(const ParamSet& p, const Element& alpha, const FieldPtr& field);

/// All 2^d elements of the GF(2)-span of the generators.
std::vector<Element> span_elements(std::span<const Element> generators, const gf2m::Field& field);
Element random_in_span(std::span<const Element> generators, const gf2m::Field& field,
                       RandomSource& rng);

/// [T | T | ... | T] with `width` columns; t.cols() must divide width.
BitMatrix tiled_transform(const BitMatrix& t, std::size_t width);

/// Rows y_0, y_0 A, y_0 A^2, ... with A = T' T^-1 where T' is T rotated one
/// column to the right. Then y W_T is partial circulant for W_T tiled from T.
Matrix shift_recursion_rows(const Vector& y0, const BitMatrix& t, std::size_t rows);

XWitness construct_x(const ParamSet& p, std::span<const std::size_t> info_set, const FieldPtr& field,
                     RandomSource& rng);

SubspaceSpec draw_subspaces(const ParamSet& p, std::span<const std::size_t> info_set,
                            const gf2m::Field& field, RandomSource& rng);

/// Invertible circulant-block matrix with column block j drawn from
/// spec.generators(j). Throws GenerationError after 64 singular draws.
Matrix construct_p(const ParamSet& p, const SubspaceSpec& spec, const FieldPtr& field,
                   RandomSource& rng);
/// b with entries in V such that circulant(b) is invertible.
Vector construct_b(const ParamSet& p, const SubspaceSpec& spec, const FieldPtr& field,
                   RandomSource& rng);

/// Throws ParamViolation for invalid or original-variant parameters.
KeyGenOutput keygen_with_witness(const ParamSet& p, RandomSource& rng);
KeyPair keygen(const ParamSet& p, RandomSource& rng);

/// beta * M with beta holding t GF(2)-independent elements and M a rank-t
/// t x n binary matrix.
Vector sample_rank_error(const FieldPtr& field, std::size_t n, std::size_t t, RandomSource& rng);

Vector encrypt(const PublicKey& pk, const Vector& m, RandomSource& rng);
/// c = m G_pub + e for a caller-chosen e.
Vector encrypt_with_error(const PublicKey& pk, const Vector& m, const Vector& e);

/// The disguising matrix P for either variant.
Matrix secret_p(const SecretKey& sk);

/// Throws DecryptFailure listing the blocks that could not be decoded.
Vector decrypt(const SecretKey& sk, const Vector& c);

}  // namespace gabkron::scheme
