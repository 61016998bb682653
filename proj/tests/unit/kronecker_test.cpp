#include <gtest/gtest.h>

#include <array>

#include "gabkron/codes/kronecker.hpp"
#include "gabkron/errors.hpp"
#include "gabkron/scheme.hpp"
#include "oracles.hpp"

namespace {

using gabkron::SplitMix64;
using gabkron::codes::GabidulinCode;
using gabkron::codes::KroneckerCode;
using gabkron::gf2m::Field;
using gabkron::linalg::FieldPtr;
using gabkron::linalg::Matrix;
using gabkron::linalg::Vector;
namespace oracle = gabkron::oracle;

GabidulinCode inner(unsigned m, std::size_t n2, std::size_t k2) {
  const FieldPtr f = Field::standard(m);
  const std::array<std::uint8_t, 2> seed{7, static_cast<std::uint8_t>(m)};
  return GabidulinCode(gabkron::scheme::frobenius_support(f->find_normal_element(seed), n2, f), k2);
}

Matrix random_full_rank(const FieldPtr& f, std::size_t k1, std::size_t n1, SplitMix64& rng) {
  while (true) {
    Matrix g = Matrix::random(f, k1, n1, rng);
    if (gabkron::linalg::rank(g) == k1) return g;
  }
}

// Re-encodes the decoded message and checks every block residual is within
// the inner radius.
bool residual_ok(const KroneckerCode& code, const Vector& y, const Vector& m) {
  const Vector r = y - oracle::product(m, code.generator());
  for (std::size_t j = 0; j < code.n1(); ++j) {
    if (oracle::rank_weight(r.slice(j * code.n2(), code.n2())) > code.inner().radius()) return false;
  }
  return true;
}

TEST(KroneckerCode, OneByOneFactorGivesInner) {
  const auto c2 = inner(6, 6, 2);
  const FieldPtr f = c2.field_ptr();
  const KroneckerCode code(Matrix::identity(f, 1), c2);
  EXPECT_EQ(code.generator(), c2.generator());
  EXPECT_EQ(code.length(), 6U);
  EXPECT_EQ(code.dimension(), 2U);
}

TEST(KroneckerCode, IdentityFactorIsBlockDiagonal) {
  const auto c2 = inner(6, 6, 2);
  const FieldPtr f = c2.field_ptr();
  const KroneckerCode code(Matrix::identity(f, 2), c2);
  const Matrix& g = code.generator();
  ASSERT_EQ(g.rows(), 4U);
  ASSERT_EQ(g.cols(), 12U);
  EXPECT_EQ(g.block(0, 0, 2, 6), c2.generator());
  EXPECT_EQ(g.block(2, 6, 2, 6), c2.generator());
  EXPECT_TRUE(g.block(0, 6, 2, 6).is_zero());
  EXPECT_TRUE(g.block(2, 0, 2, 6).is_zero());
}

TEST(KroneckerCode, FactorisationAndFactorRank) {
  SplitMix64 rng(1);
  const auto c2 = inner(6, 6, 2);
  const FieldPtr f = c2.field_ptr();
  for (int i = 0; i < 20; ++i) {
    const KroneckerCode code(random_full_rank(f, 2, 2, rng), c2);
    EXPECT_EQ(oracle::product(code.gbar1(), code.gbar2()), code.generator());
    EXPECT_EQ(gabkron::linalg::rank(code.gbar1()), 4U);
    EXPECT_TRUE(code.check_factor_rank());
    EXPECT_EQ(code.gbar1().rows(), 4U);
    EXPECT_EQ(code.gbar1().cols(), 4U);
    EXPECT_EQ(code.gbar2().rows(), 4U);
    EXPECT_EQ(code.gbar2().cols(), 12U);
  }
}

TEST(KroneckerCode, RankDeficientFactorRejected) {
  const auto c2 = inner(6, 6, 2);
  const FieldPtr f = c2.field_ptr();
  Matrix g1(f, 2, 3);
  g1(0, 0) = f->generator();
  g1(1, 0) = f->generator() * f->generator();
  g1(0, 2) = f->one();
  g1(1, 2) = f->generator();
  EXPECT_THROW(KroneckerCode(g1, c2), gabkron::SingularMatrix);
}

TEST(KroneckerCode, CodewordsLieInBlockSupercode) {
  SplitMix64 rng(2);
  for (auto [m, n1, k1, n2, k2] : {std::array<std::size_t, 5>{6, 2, 2, 6, 2}, {12, 3, 2, 12, 4}, {8, 4, 1, 8, 3}}) {
    const auto c2 = inner(static_cast<unsigned>(m), n2, k2);
    const FieldPtr f = c2.field_ptr();
    const KroneckerCode code(random_full_rank(f, k1, n1, rng), c2);
    EXPECT_TRUE(code.in_block_supercode(Vector(f, code.length())));
    for (int i = 0; i < 500; ++i) {
      ASSERT_TRUE(code.in_block_supercode(code.encode(Vector::random(f, code.dimension(), rng))));
    }
  }
}

TEST(KroneckerCode, RandomWordAgreesWithExplicitSolve) {
  SplitMix64 rng(3);
  const auto c2 = inner(6, 6, 2);
  const FieldPtr f = c2.field_ptr();
  const KroneckerCode code(random_full_rank(f, 2, 2, rng), c2);
  for (int i = 0; i < 20; ++i) {
    const Vector c = Vector::random(f, 12, rng);
    const bool expected = gabkron::linalg::solve_left(code.gbar2(), c).has_value();
    EXPECT_EQ(code.in_block_supercode(c), expected);
  }
}

TEST(KroneckerDecode, NoError) {
  SplitMix64 rng(4);
  const auto c2 = inner(6, 6, 2);
  const FieldPtr f = c2.field_ptr();
  const KroneckerCode code(random_full_rank(f, 2, 2, rng), c2);
  const Vector m = Vector::random(f, 4, rng);
  const auto dec = code.decode(code.encode(m));
  ASSERT_TRUE(dec.message.has_value());
  EXPECT_EQ(*dec.message, m);
  EXPECT_TRUE(dec.failed_blocks.empty());
  EXPECT_EQ(dec.info_set, code.info_set());
}

TEST(KroneckerDecode, PerBlockErrorsWithinRadius) {
  SplitMix64 rng(5);
  const auto c2 = inner(6, 6, 2);
  const FieldPtr f = c2.field_ptr();
  for (int i = 0; i < 200; ++i) {
    const KroneckerCode code(random_full_rank(f, 2, 2, rng), c2);
    const Vector m = Vector::random(f, 4, rng);
    std::vector<Vector> parts;
    for (std::size_t j = 0; j < 2; ++j) {
      parts.push_back(gabkron::scheme::sample_rank_error(f, 6, rng.uniform(3), rng));
    }
    const Vector e = Vector::concat(parts);
    const Vector y = code.encode(m) + e;
    const auto dec = code.decode(y);
    ASSERT_TRUE(dec.message.has_value());
    ASSERT_EQ(*dec.message, m);
    ASSERT_TRUE(residual_ok(code, y, *dec.message));
  }
}

TEST(KroneckerDecode, AlternativeInformationSet) {
  SplitMix64 rng(6);
  const auto c2 = inner(8, 8, 2);
  const FieldPtr f = c2.field_ptr();
  const KroneckerCode code(random_full_rank(f, 1, 3, rng), c2);
  ASSERT_EQ(code.info_set().size(), 1U);
  const std::size_t first = code.info_set()[0];
  int recovered = 0;
  for (int i = 0; i < 50; ++i) {
    const Vector m = Vector::random(f, 2, rng);
    Vector e(f, 24);
    // Corrupt the preferred block far beyond the radius of 3.
    e.set_slice(first * 8, gabkron::scheme::sample_rank_error(f, 8, 6, rng));
    const Vector y = code.encode(m) + e;
    const auto dec = code.decode(y);
    if (!dec.failed_blocks.empty()) {
      ASSERT_EQ(dec.failed_blocks, std::vector<std::size_t>{first});
      ASSERT_TRUE(dec.message.has_value());
      ASSERT_EQ(*dec.message, m);
      ASSERT_NE(dec.info_set, code.info_set());
      ++recovered;
    }
  }
  EXPECT_GT(recovered, 40);
}

TEST(KroneckerDecode, PreferredSetIsTriedFirst) {
  SplitMix64 rng(7);
  const auto c2 = inner(8, 8, 2);
  const FieldPtr f = c2.field_ptr();
  const KroneckerCode code(random_full_rank(f, 2, 4, rng), c2);
  const Vector m = Vector::random(f, 4, rng);
  const std::array<std::size_t, 2> pref{2, 3};
  const auto dec = code.decode(code.encode(m), pref);
  ASSERT_TRUE(dec.message.has_value());
  EXPECT_EQ(*dec.message, m);
  EXPECT_EQ(dec.info_set, (std::vector<std::size_t>{2, 3}));
}

TEST(KroneckerDecode, FailsWhenNoInformationSetSurvives) {
  SplitMix64 rng(8);
  const auto c2 = inner(8, 8, 2);
  const FieldPtr f = c2.field_ptr();
  const KroneckerCode code(random_full_rank(f, 2, 2, rng), c2);
  const Vector m = Vector::random(f, 4, rng);
  Vector e(f, 16);
  e.set_slice(8, gabkron::scheme::sample_rank_error(f, 8, 6, rng));
  const auto dec = code.decode(code.encode(m) + e);
  if (!dec.failed_blocks.empty()) {
    EXPECT_FALSE(dec.message.has_value());
    EXPECT_EQ(dec.failed_blocks, std::vector<std::size_t>{1});
    EXPECT_TRUE(dec.info_set.empty());
  }
  EXPECT_THROW((void)code.decode(Vector(f, 15)), gabkron::InvalidArgument);
}

}  // namespace
