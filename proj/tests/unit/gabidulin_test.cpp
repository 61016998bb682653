#include <gtest/gtest.h>

#include <array>

#include "gabkron/codes/gabidulin.hpp"
#include "gabkron/errors.hpp"
#include "gabkron/scheme.hpp"
#include "oracles.hpp"

namespace {

using gabkron::SplitMix64;
using gabkron::codes::GabidulinCode;
using gabkron::gf2m::Field;
using gabkron::linalg::FieldPtr;
using gabkron::linalg::Matrix;
using gabkron::linalg::Vector;
namespace oracle = gabkron::oracle;

GabidulinCode normal_code(unsigned m, std::size_t n, std::size_t k) {
  const FieldPtr f = Field::standard(m);
  const std::array<std::uint8_t, 1> seed{static_cast<std::uint8_t>(m)};
  return GabidulinCode(gabkron::scheme::frobenius_support(f->find_normal_element(seed), n, f), k);
}

Vector random_rank_error(const FieldPtr& f, std::size_t n, std::size_t t, SplitMix64& rng) {
  return gabkron::scheme::sample_rank_error(f, n, t, rng);
}

TEST(GabidulinCode, MooreRowsAreFrobeniusPowers) {
  const auto code = normal_code(8, 6, 3);
  const auto& f = *code.field_ptr();
  const Matrix& g = code.generator();
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t j = 0; j < g.cols(); ++j) {
      EXPECT_EQ(g(i, j), f.frobenius(code.support()[j], static_cast<unsigned>(i)));
    }
  }
  EXPECT_EQ(gabkron::linalg::rank(g), 3U);
  EXPECT_EQ(code.radius(), 1U);
}

TEST(GabidulinCode, ParityCheckAnnihilatesGenerator) {
  for (auto [m, n, k] : {std::array<std::size_t, 3>{4, 4, 2}, {8, 8, 3}, {12, 12, 4}, {90, 90, 18}}) {
    const auto code = normal_code(static_cast<unsigned>(m), n, k);
    const Matrix h = code.parity_check();
    ASSERT_EQ(h.rows(), n - k);
    EXPECT_EQ(gabkron::linalg::rank(h), n - k);
    const Matrix prod = oracle::product(h, code.generator().transpose());
    for (std::size_t i = 0; i < prod.rows(); ++i) {
      for (std::size_t j = 0; j < prod.cols(); ++j) ASSERT_TRUE(prod(i, j).is_zero());
    }
  }
}

TEST(GabidulinCode, FullDimensionHasNoRadius) {
  const auto code = normal_code(6, 6, 6);
  EXPECT_EQ(code.radius(), 0U);
  EXPECT_EQ(gabkron::linalg::rank(code.generator()), 6U);
}

TEST(GabidulinCode, NormalSupportCirculantRowShift) {
  // With a normal element and n = m, each row is the previous one shifted.
  const auto code = normal_code(12, 12, 4);
  EXPECT_TRUE(oracle::rows_shift_right(code.generator()));
}

TEST(GabidulinCode, RejectsDeficientSupport) {
  const FieldPtr f = Field::standard(4);
  const Vector g(f, {f->one(), f->generator(), f->one() + f->generator()});
  EXPECT_THROW(GabidulinCode(g, 1), gabkron::InvalidArgument);
  const Vector g5(f, {f->one(), f->from_uint(2), f->from_uint(4), f->from_uint(8), f->from_uint(3)});
  EXPECT_THROW(GabidulinCode(g5, 2), gabkron::InvalidArgument);
  const Vector ok(f, {f->one(), f->from_uint(2)});
  EXPECT_THROW(GabidulinCode(ok, 0), gabkron::InvalidArgument);
  EXPECT_THROW(GabidulinCode(ok, 3), gabkron::InvalidArgument);
}

TEST(GabidulinCode, EncodeBasics) {
  const auto code = normal_code(8, 8, 3);
  const auto f = code.field_ptr();
  EXPECT_TRUE(code.encode(Vector(f, 3)).is_zero());
  Vector e1(f, 3);
  e1[0] = f->one();
  EXPECT_EQ(code.encode(e1), code.support());
  SplitMix64 rng(1);
  const Vector u = Vector::random(f, 3, rng);
  const Vector v = Vector::random(f, 3, rng);
  EXPECT_EQ(code.encode(u + v), code.encode(u) + code.encode(v));
  EXPECT_EQ(code.encode(u), oracle::product(u, code.generator()));
  EXPECT_THROW((void)code.encode(Vector(f, 2)), gabkron::InvalidArgument);
}

TEST(GabidulinCode, MinimumDistanceIsThree) {
  const auto code = normal_code(4, 4, 2);
  const auto words = oracle::all_codewords(code);
  ASSERT_EQ(words.size(), 256U);
  EXPECT_EQ(oracle::min_rank_distance(words), 3U);
}

TEST(GabidulinDecode, ExhaustiveAgainstNearestCodeword) {
  const auto code = normal_code(4, 4, 2);
  const auto f = code.field_ptr();
  const auto messages = oracle::all_vectors(f, 2);
  const auto words = oracle::all_codewords(code);
  const auto errors = oracle::rank_one_vectors(f, 4);
  ASSERT_EQ(errors.size(), 226U);
  for (std::size_t w = 0; w < words.size(); w += 17) {
    for (const auto& e : errors) {
      const Vector y = words[w] + e;
      const auto near = oracle::nearest_codewords(words, y);
      ASSERT_EQ(near.indices.size(), 1U);
      ASSERT_EQ(near.indices[0], w);
      const auto dec = code.decode(y);
      ASSERT_TRUE(dec.has_value());
      ASSERT_EQ(dec->message, messages[w]);
      ASSERT_EQ(dec->error, e);
    }
  }
}

TEST(GabidulinDecode, RandomWithinRadius) {
  SplitMix64 rng(2);
  for (auto [m, n, k] : {std::array<std::size_t, 3>{8, 8, 2}, {12, 12, 4}, {12, 9, 3}, {16, 16, 6}}) {
    const auto code = normal_code(static_cast<unsigned>(m), n, k);
    const auto f = code.field_ptr();
    for (int i = 0; i < 500; ++i) {
      const Vector u = Vector::random(f, k, rng);
      const std::size_t t = rng.uniform(code.radius() + 1);
      const Vector e = random_rank_error(f, n, t, rng);
      ASSERT_EQ(oracle::rank_weight(e), t);
      const auto dec = code.decode(code.encode(u) + e);
      ASSERT_TRUE(dec.has_value()) << "m=" << m << " t=" << t;
      ASSERT_EQ(dec->message, u);
      ASSERT_EQ(dec->error, e);
    }
  }
}

TEST(GabidulinDecode, BeyondRadiusNeverReturnsFarWord) {
  // A rank-2 error on the n=4, k=2 code may sit within distance 1 of a
  // different codeword. The decoder must then return that word or fail; any
  // output must be within the radius of y.
  const auto code = normal_code(4, 4, 2);
  const auto f = code.field_ptr();
  const auto words = oracle::all_codewords(code);
  SplitMix64 rng(3);
  std::size_t redirected = 0;
  std::size_t failed = 0;
  for (int i = 0; i < 300; ++i) {
    const Vector u = Vector::random(f, 2, rng);
    const Vector e = random_rank_error(f, 4, 2, rng);
    const Vector y = code.encode(u) + e;
    const auto near = oracle::nearest_codewords(words, y);
    const auto dec = code.decode(y);
    if (!dec) {
      EXPECT_GT(near.distance, code.radius());
      ++failed;
      continue;
    }
    EXPECT_LE(oracle::rank_weight(dec->error), code.radius());
    EXPECT_EQ(code.encode(dec->message) + dec->error, y);
    EXPECT_NE(dec->message, u);
    ++redirected;
  }
  EXPECT_GT(redirected + failed, 0U);
}

TEST(GabidulinDecode, LengthMismatchThrows) {
  const auto code = normal_code(8, 8, 2);
  EXPECT_THROW((void)code.decode(Vector(code.field_ptr(), 7)), gabkron::InvalidArgument);
}

}  // namespace
