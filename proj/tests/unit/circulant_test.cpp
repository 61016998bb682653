#include <gtest/gtest.h>

#include "gabkron/errors.hpp"
#include "gabkron/linalg/circulant.hpp"
#include "oracles.hpp"

namespace {

using gabkron::RandomSource;
using gabkron::SplitMix64;
using gabkron::gf2m::Field;
using namespace gabkron::linalg;
namespace oracle = gabkron::oracle;

FieldPtr gf(unsigned m) { return Field::standard(m); }

Vector unit(const FieldPtr& f, std::size_t n) {
  Vector e(f, n);
  e[0] = f->one();
  return e;
}

Matrix random_circulant_block(const FieldPtr& f, std::size_t n1, std::size_t n2, RandomSource& rng) {
  Matrix a(f, n1 * n2, n1 * n2);
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n1; ++j) {
      a.set_block(i * n2, j * n2, circulant(Vector::random(f, n2, rng)));
    }
  }
  return a;
}

Matrix random_partial_block(const FieldPtr& f, std::size_t k1, std::size_t n1, std::size_t k2,
                            std::size_t n2, RandomSource& rng) {
  Matrix b(f, k1 * k2, n1 * n2);
  for (std::size_t i = 0; i < k1; ++i) {
    for (std::size_t j = 0; j < n1; ++j) {
      b.set_block(i * k2, j * n2, partial_circulant(Vector::random(f, n2, rng), k2));
    }
  }
  return b;
}

TEST(PartialCirculant, TwoRowsOfThree) {
  const auto f = gf(4);
  const Vector a(f, {f->from_uint(1), f->from_uint(2), f->from_uint(3)});
  const Matrix c = partial_circulant(a, 2);
  ASSERT_EQ(c.rows(), 2U);
  // [[a0, a2, a1], [a1, a0, a2]]
  EXPECT_EQ(c.row(0), Vector(f, {a[0], a[2], a[1]}));
  EXPECT_EQ(c.row(1), Vector(f, {a[1], a[0], a[2]}));
  EXPECT_EQ(partial_circulant(a, 1).row(0), Vector(f, {a[0], a[2], a[1]}));
}

TEST(PartialCirculant, UnitGivesIdentity) {
  const auto f = gf(8);
  EXPECT_EQ(circulant(unit(f, 6)), Matrix::identity(f, 6));
}

TEST(PartialCirculant, MatchesDirectFill) {
  SplitMix64 rng(1);
  const auto f = gf(8);
  for (std::size_t k = 1; k <= 7; ++k) {
    const Vector a = Vector::random(f, 7, rng);
    const Matrix c = partial_circulant(a, k);
    EXPECT_EQ(c, oracle::circulant_rows(a, k));
    EXPECT_TRUE(oracle::rows_shift_right(c));
    EXPECT_TRUE(is_partial_circulant(c));
  }
  EXPECT_THROW((void)partial_circulant(Vector::random(f, 3, rng), 0), gabkron::InvalidArgument);
  EXPECT_THROW((void)partial_circulant(Vector::random(f, 3, rng), 4), gabkron::InvalidArgument);
}

TEST(PartialCirculant, FirstRowParametrisation) {
  SplitMix64 rng(2);
  const auto f = gf(12);
  const Vector r = Vector::random(f, 9, rng);
  const Matrix c = circulant_from_first_row(r, 4);
  EXPECT_EQ(c.row(0), r);
  EXPECT_EQ(c, partial_circulant(generator_from_first_row(r), 4));
}

TEST(StructureScan, RejectsPerturbation) {
  SplitMix64 rng(3);
  const auto f = gf(8);
  Matrix c = circulant(Vector::random(f, 5, rng));
  EXPECT_TRUE(is_circulant(c));
  c(3, 2) += f->one();
  EXPECT_FALSE(is_circulant(c));
  EXPECT_FALSE(oracle::rows_shift_right(c));
  EXPECT_FALSE(is_circulant(partial_circulant(Vector::random(f, 5, rng), 3)));
}

TEST(MulClosure, Examples) {
  SplitMix64 rng(4);
  const auto f = gf(4);
  const Matrix p = partial_circulant(Vector::random(f, 3, rng), 2);
  EXPECT_EQ(circulant_mul_closure(p, Matrix::identity(f, 3)), p);
  EXPECT_EQ(circulant_mul_closure(p, circulant(unit(f, 3))), p);
  const Matrix q = circulant(Vector::random(f, 3, rng));
  const Matrix pq = circulant_mul_closure(p, q);
  EXPECT_EQ(pq, oracle::product(p, q));
  EXPECT_TRUE(is_partial_circulant(pq));
}

TEST(MulClosure, RandomPairs) {
  SplitMix64 rng(5);
  const auto f = gf(6);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 2 + rng.uniform(7);
    const std::size_t k = 1 + rng.uniform(n);
    const Matrix p = partial_circulant(Vector::random(f, n, rng), k);
    const Matrix q = circulant(Vector::random(f, n, rng));
    const Matrix generic = oracle::product(p, q);
    ASSERT_TRUE(oracle::rows_shift_right(generic));
    ASSERT_EQ(circulant_mul_closure(p, q), generic);
  }
}

TEST(MulClosure, RejectsUnstructuredInputs) {
  SplitMix64 rng(6);
  const auto f = gf(6);
  const Matrix r = Matrix::random(f, 2, 4, rng);
  const Matrix q = circulant(Vector::random(f, 4, rng));
  if (!is_partial_circulant(r)) EXPECT_THROW((void)circulant_mul_closure(r, q), gabkron::StructureViolation);
  const Matrix p = partial_circulant(Vector::random(f, 4, rng), 2);
  Matrix bad = q;
  bad(1, 1) += f->one();
  EXPECT_THROW((void)circulant_mul_closure(p, bad), gabkron::StructureViolation);
}

TEST(CirculantInverse, IsCirculant) {
  SplitMix64 rng(7);
  const auto f = gf(6);
  int checked = 0;
  while (checked < 100) {
    const Matrix c = circulant(Vector::random(f, 2 + rng.uniform(6), rng));
    if (rank(c) < c.rows()) continue;
    const Matrix ci = inverse(c);
    ASSERT_TRUE(oracle::is_inverse(c, ci));
    ASSERT_TRUE(oracle::rows_shift_right(ci));
    ++checked;
  }
}

TEST(BlockInvert, IdentityAndSmallExample) {
  const auto f = gf(4);
  const Matrix id = Matrix::identity(f, 6);
  EXPECT_EQ(circulant_block_invert(id, 3), id);
  EXPECT_TRUE(is_circulant_block(id, 3));

  SplitMix64 rng(8);
  Matrix a;
  do {
    a = random_circulant_block(f, 2, 3, rng);
  } while (rank(a) < 6);
  const Matrix ai = circulant_block_invert(a, 3);
  EXPECT_TRUE(oracle::is_inverse(a, ai));
  EXPECT_TRUE(oracle::blocks_shift_right(ai, 3, 3));
}

TEST(BlockInvert, RandomGroupClosure) {
  SplitMix64 rng(9);
  const auto f = gf(6);
  int checked = 0;
  while (checked < 100) {
    const std::size_t n1 = 1 + rng.uniform(3);
    const std::size_t n2 = 2 + rng.uniform(4);
    const Matrix a = random_circulant_block(f, n1, n2, rng);
    if (rank(a) < a.rows()) {
      EXPECT_THROW((void)circulant_block_invert(a, n2), gabkron::SingularMatrix);
      continue;
    }
    const Matrix ai = circulant_block_invert(a, n2);
    ASSERT_TRUE(oracle::is_inverse(a, ai));
    ASSERT_TRUE(oracle::blocks_shift_right(ai, n2, n2));
    ++checked;
  }
}

TEST(BlockInvert, RejectsNonBlockInput) {
  SplitMix64 rng(10);
  const auto f = gf(6);
  const Matrix a = Matrix::random_invertible(f, 6, rng);
  if (!is_circulant_block(a, 3)) EXPECT_THROW((void)circulant_block_invert(a, 3), gabkron::StructureViolation);
}

TEST(BlockCompose, ProductIsPartialCirculantBlock) {
  SplitMix64 rng(11);
  const auto f = gf(4);
  const Matrix b = random_partial_block(f, 2, 2, 2, 3, rng);
  const Matrix a = random_circulant_block(f, 2, 3, rng);
  const Matrix q = circulant_block_compose(b, a, 2, 3);
  EXPECT_EQ(q, oracle::product(b, a));
  EXPECT_TRUE(oracle::blocks_shift_right(q, 2, 3));
  EXPECT_TRUE(is_partial_circulant_block(q, 2, 3));
}

TEST(BlockCompose, RandomPairs) {
  SplitMix64 rng(12);
  const auto f = gf(6);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n1 = 1 + rng.uniform(3);
    const std::size_t k1 = 1 + rng.uniform(n1);
    const std::size_t n2 = 2 + rng.uniform(4);
    const std::size_t k2 = 1 + rng.uniform(n2);
    const Matrix b = random_partial_block(f, k1, n1, k2, n2, rng);
    const Matrix a = random_circulant_block(f, n1, n2, rng);
    const Matrix generic = oracle::product(b, a);
    ASSERT_TRUE(oracle::blocks_shift_right(generic, k2, n2));
    ASSERT_EQ(circulant_block_compose(b, a, k2, n2), generic);
  }
}

TEST(BlockScan, BlockwiseDetection) {
  SplitMix64 rng(13);
  const auto f = gf(6);
  Matrix a = random_circulant_block(f, 2, 4, rng);
  EXPECT_TRUE(is_circulant_block(a, 4));
  EXPECT_FALSE(is_circulant_block(a, 3));
  a(5, 6) += f->one();
  EXPECT_FALSE(is_circulant_block(a, 4));
}

}  // namespace
