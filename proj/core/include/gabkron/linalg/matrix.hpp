#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "gabkron/gf2m.hpp"
#include "gabkron/linalg/bitmatrix.hpp"
#include "gabkron/random.hpp"

namespace gabkron::linalg {

using gf2m::Element;
using FieldPtr = std::shared_ptr<const gf2m::Field>;

/// Row vector over GF(2^m). All entries share the vector's field.
class Vector {
 public:
  Vector() = default;
  Vector(FieldPtr field, std::size_t n);
  /// Throws FieldMismatch if an entry is bound to another field.
  Vector(FieldPtr field, std::vector<Element> entries);

  static Vector random(FieldPtr field, std::size_t n, RandomSource& rng);

  const gf2m::Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const noexcept { return field_; }

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  const Element& operator[](std::size_t i) const { return entries_[i]; }
  /// Assigning an element of another field through this reference breaks
  /// the vector's invariant; use set() when the source is untrusted.
  Element& operator[](std::size_t i) { return entries_[i]; }
  void set(std::size_t i, const Element& v);

  std::span<const Element> entries() const noexcept { return entries_; }
  std::span<Element> entries() noexcept { return entries_; }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  Vector slice(std::size_t offset, std::size_t len) const;
  void set_slice(std::size_t offset, const Vector& v);
  static Vector concat(std::span<const Vector> parts);

  bool is_zero() const noexcept;

  Vector& operator+=(const Vector& rhs);
  Vector& operator-=(const Vector& rhs) { return *this += rhs; }
  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a += b; }
  friend Vector operator*(const Element& s, const Vector& v);
  friend bool operator==(const Vector& a, const Vector& b);

 private:
  FieldPtr field_;
  std::vector<Element> entries_;
};

/// Dense row-major matrix over GF(2^m).
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols);

  static Matrix identity(FieldPtr field, std::size_t n);
  static Matrix random(FieldPtr field, std::size_t rows, std::size_t cols, RandomSource& rng);
  /// Random square matrix of full rank (rejection sampling).
  static Matrix random_invertible(FieldPtr field, std::size_t n, RandomSource& rng,
                                  int max_draws = 64);
  static Matrix from_rows(FieldPtr field, std::span<const Vector> rows);
  static Matrix diagonal(const Vector& d);

  const gf2m::Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  const Element& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Element& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::span<const Element> row_span(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<Element> row_span(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  Vector row(std::size_t r) const;
  Vector col(std::size_t c) const;
  void set_row(std::size_t r, const Vector& v);

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
  Matrix select_columns(std::span<const std::size_t> cols) const;
  Matrix transpose() const;

  bool is_zero() const noexcept;

  Matrix& operator+=(const Matrix& rhs);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Vector operator*(const Vector& v, const Matrix& m);
  friend Matrix operator*(const Element& s, const Matrix& m);
  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  FieldPtr field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Element> data_;
};

/// Kronecker product: block (i, j) of the result is a(i, j) * b.
Matrix kron(const Matrix& a, const Matrix& b);
Matrix hconcat(const Matrix& a, const Matrix& b);

/// Reduced row echelon form with the pivot columns in increasing order.
struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;

  std::size_t rank() const noexcept { return pivots.size(); }
};

Echelon rref(Matrix m);
std::size_t rank(const Matrix& m);
/// Throws SingularMatrix carrying the achieved rank.
Matrix inverse(const Matrix& m);
/// Some x with x * a = b, or nullopt when b is outside the row space of a.
std::optional<Vector> solve_left(const Matrix& a, const Vector& b);
/// Basis (as rows) of {v : a * v^T = 0}.
Matrix right_kernel(const Matrix& a);
/// Lexicographically first set of rows() column indices whose square
/// submatrix is invertible. Throws SingularMatrix for rank-deficient g.
std::vector<std::size_t> information_set(const Matrix& g);

/// m x n GF(2) matrix whose column j holds the coefficients of v[j].
BitMatrix expand_over_base(const Vector& v);
/// GF(2)-dimension of the span of the coordinates of v.
std::size_t rank_weight(const Vector& v);
/// GF(2)-dimension of the span of the columns of m, each column expanded
/// into rows() * deg coefficient bits.
std::size_t column_rank_q(const Matrix& m);

/// Entry-wise product of a GF(2^m) matrix with a GF(2) matrix on the right.
Matrix mul_base(const Matrix& a, const BitMatrix& w);
Vector mul_base(const Vector& a, const BitMatrix& w);

/// Matrix wire format: rows and cols as 32-bit big-endian integers, then
/// the entries row-major in the field element encoding.
Bytes encode_matrix(const Matrix& m);
void encode_matrix_into(const Matrix& m, Bytes& out);
/// Reads a matrix starting at `offset` and advances it. Throws ParseError.
Matrix decode_matrix(FieldPtr field, std::span<const std::uint8_t> bytes, std::size_t& offset);

}  // namespace gabkron::linalg
