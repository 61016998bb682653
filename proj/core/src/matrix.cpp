#include "gabkron/linalg/matrix.hpp"

#include <algorithm>
#include <utility>

#include "gabkron/errors.hpp"

namespace gabkron::linalg {

namespace {

void require_field(const FieldPtr& f) {
  if (!f) throw InvalidArgument("matrix or vector without a field");
}

void require_same(const FieldPtr& a, const FieldPtr& b) {
  if (!a || !b) throw FieldMismatch();
  if (a != b && !a->compatible(*b)) throw FieldMismatch();
}

void put_u32(Bytes& out, std::uint32_t v) {
  for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<std::uint8_t>(v >> s));
}

std::uint32_t get_u32(std::span<const std::uint8_t> in, std::size_t& off) {
  if (off + 4 > in.size()) throw ParseError("truncated 32-bit field");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v = (v << 8) | in[off + static_cast<std::size_t>(i)];
  off += 4;
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// Vector

Vector::Vector(FieldPtr field, std::size_t n) : field_(std::move(field)) {
  require_field(field_);
  entries_.assign(n, field_->zero());
}

Vector::Vector(FieldPtr field, std::vector<Element> entries)
    : field_(std::move(field)), entries_(std::move(entries)) {
  require_field(field_);
  for (const auto& e : entries_) {
    if (e.field() == nullptr || !field_->compatible(*e.field())) throw FieldMismatch();
  }
}

Vector Vector::random(FieldPtr field, std::size_t n, RandomSource& rng) {
  Vector v(field, n);
  for (auto& e : v.entries_) e = field->random(rng);
  return v;
}

void Vector::set(std::size_t i, const Element& v) {
  if (v.field() == nullptr || !field_->compatible(*v.field())) throw FieldMismatch();
  entries_.at(i) = v;
}

Vector Vector::slice(std::size_t offset, std::size_t len) const {
  if (offset + len > size()) throw InvalidArgument("vector slice out of range");
  return Vector(field_, std::vector<Element>(entries_.begin() + static_cast<std::ptrdiff_t>(offset),
                                             entries_.begin() + static_cast<std::ptrdiff_t>(offset + len)));
}

void Vector::set_slice(std::size_t offset, const Vector& v) {
  require_same(field_, v.field_);
  if (offset + v.size() > size()) throw InvalidArgument("vector slice out of range");
  std::copy(v.entries_.begin(), v.entries_.end(), entries_.begin() + static_cast<std::ptrdiff_t>(offset));
}

Vector Vector::concat(std::span<const Vector> parts) {
  if (parts.empty()) throw InvalidArgument("concat of no vectors");
  std::vector<Element> all;
  for (const auto& p : parts) {
    require_same(parts.front().field_, p.field_);
    all.insert(all.end(), p.entries_.begin(), p.entries_.end());
  }
  return Vector(parts.front().field_, std::move(all));
}

bool Vector::is_zero() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](const Element& e) { return e.is_zero(); });
}

Vector& Vector::operator+=(const Vector& rhs) {
  require_same(field_, rhs.field_);
  if (size() != rhs.size()) throw InvalidArgument("vector length mismatch");
  field_->axpy(entries_, rhs.entries_, field_->one());
  return *this;
}

Vector operator*(const Element& s, const Vector& v) {
  Vector r = v;
  r.field_->scale(r.entries_, s);
  return r;
}

bool operator==(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) return false;
  if (a.field_ && b.field_ && !a.field_->compatible(*b.field_)) return false;
  return std::equal(a.entries_.begin(), a.entries_.end(), b.entries_.begin());
}

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols) {
  require_field(field_);
  data_.assign(rows * cols, field_->zero());
}

Matrix Matrix::identity(FieldPtr field, std::size_t n) {
  Matrix id(field, n, n);
  for (std::size_t i = 0; i < n; ++i) id(i, i) = field->one();
  return id;
}

Matrix Matrix::random(FieldPtr field, std::size_t rows, std::size_t cols, RandomSource& rng) {
  Matrix r(field, rows, cols);
  for (auto& e : r.data_) e = field->random(rng);
  return r;
}

Matrix Matrix::random_invertible(FieldPtr field, std::size_t n, RandomSource& rng, int max_draws) {
  for (int attempt = 0; attempt < max_draws; ++attempt) {
    Matrix r = random(field, n, n, rng);
    if (rank(r) == n) return r;
  }
  throw GenerationError("no invertible matrix within retry budget");
}

Matrix Matrix::from_rows(FieldPtr field, std::span<const Vector> rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(field, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
  return m;
}

Matrix Matrix::diagonal(const Vector& d) {
  Matrix m(d.field_ptr(), d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Vector Matrix::row(std::size_t r) const {
  if (r >= rows_) throw InvalidArgument("row index out of range");
  return Vector(field_, std::vector<Element>(row_span(r).begin(), row_span(r).end()));
}

Vector Matrix::col(std::size_t c) const {
  if (c >= cols_) throw InvalidArgument("column index out of range");
  Vector v(field_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void Matrix::set_row(std::size_t r, const Vector& v) {
  require_same(field_, v.field_ptr());
  if (r >= rows_ || v.size() != cols_) throw InvalidArgument("set_row dimension mismatch");
  std::copy(v.begin(), v.end(), data_.begin() + static_cast<std::ptrdiff_t>(r * cols_));
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw InvalidArgument("block out of range");
  Matrix b(field_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  }
  return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  require_same(field_, b.field_);
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw InvalidArgument("block out of range");
  for (std::size_t i = 0; i < b.rows_; ++i) {
    for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }
}

Matrix Matrix::select_columns(std::span<const std::size_t> cols) const {
  Matrix s(field_, rows_, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] >= cols_) throw InvalidArgument("column index out of range");
    for (std::size_t i = 0; i < rows_; ++i) s(i, j) = (*this)(i, cols[j]);
  }
  return s;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

bool Matrix::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](const Element& e) { return e.is_zero(); });
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  require_same(field_, rhs.field_);
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw InvalidArgument("matrix sum dimension mismatch");
  field_->axpy(data_, rhs.data_, field_->one());
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same(a.field_, b.field_);
  if (a.cols_ != b.rows_) throw InvalidArgument("matrix product dimension mismatch");
  Matrix p(a.field_, a.rows_, b.cols_);
  const auto& f = *a.field_;
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) f.axpy(p.row_span(i), b.row_span(k), a(i, k));
  }
  return p;
}

Vector operator*(const Vector& v, const Matrix& m) {
  require_same(v.field_ptr(), m.field_);
  if (v.size() != m.rows_) throw InvalidArgument("vector-matrix dimension mismatch");
  Vector r(m.field_, m.cols_);
  for (std::size_t i = 0; i < m.rows_; ++i) m.field_->axpy(r.entries(), m.row_span(i), v[i]);
  return r;
}

Matrix operator*(const Element& s, const Matrix& m) {
  Matrix r = m;
  r.field_->scale(r.data_, s);
  return r;
}

bool operator==(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  if (a.field_ && b.field_ && !a.field_->compatible(*b.field_)) return false;
  return std::equal(a.data_.begin(), a.data_.end(), b.data_.begin());
}

Matrix kron(const Matrix& a, const Matrix& b) {
  require_same(a.field_ptr(), b.field_ptr());
  Matrix k(a.field_ptr(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      k.set_block(i * b.rows(), j * b.cols(), a(i, j) * b);
    }
  }
  return k;
}

Matrix hconcat(const Matrix& a, const Matrix& b) {
  require_same(a.field_ptr(), b.field_ptr());
  if (a.rows() != b.rows()) throw InvalidArgument("hconcat row mismatch");
  Matrix r(a.field_ptr(), a.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(0, a.cols(), b);
  return r;
}

// ---------------------------------------------------------------------------
// Elimination

Echelon rref(Matrix m) {
  const auto& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r) std::swap_ranges(m.row_span(p).begin(), m.row_span(p).end(), m.row_span(r).begin());
    auto pivot_row = m.row_span(r).subspan(c);
    f.scale(pivot_row, f.inv(pivot_row[0]));
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      const Element factor = m(i, c);
      if (factor.is_zero()) continue;
      f.axpy(m.row_span(i).subspan(c), pivot_row, factor);
    }
    pivots.push_back(c);
    ++r;
  }
  return Echelon{std::move(m), std::move(pivots)};
}

std::size_t rank(const Matrix& m) {
  // Forward elimination only.
  Matrix a = m;
  const auto& f = a.field();
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c).is_zero()) ++p;
    if (p == a.rows()) continue;
    if (p != r) std::swap_ranges(a.row_span(p).begin(), a.row_span(p).end(), a.row_span(r).begin());
    auto pivot_row = a.row_span(r).subspan(c);
    const Element inv = f.inv(pivot_row[0]);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (a(i, c).is_zero()) continue;
      f.axpy(a.row_span(i).subspan(c), pivot_row, a(i, c) * inv);
    }
    ++r;
  }
  return r;
}

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("inverse of non-square matrix");
  const std::size_t n = m.rows();
  Echelon e = rref(hconcat(m, Matrix::identity(m.field_ptr(), n)));
  std::size_t left_rank = 0;
  while (left_rank < e.pivots.size() && e.pivots[left_rank] < n) ++left_rank;
  if (left_rank != n) throw SingularMatrix(left_rank);
  return e.reduced.block(0, n, n, n);
}

std::optional<Vector> solve_left(const Matrix& a, const Vector& b) {
  require_same(a.field_ptr(), b.field_ptr());
  if (b.size() != a.cols()) throw InvalidArgument("solve_left dimension mismatch");
  // x * A = b  <=>  A^T x^T = b^T.
  Matrix aug(a.field_ptr(), a.cols(), a.rows() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(j, i) = a(i, j);
  }
  for (std::size_t j = 0; j < a.cols(); ++j) aug(j, a.rows()) = b[j];
  Echelon e = rref(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == a.rows()) return std::nullopt;
  Vector x(a.field_ptr(), a.rows());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.reduced(i, a.rows());
  return x;
}

Matrix right_kernel(const Matrix& a) {
  Echelon e = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t fcol = 0; fcol < a.cols(); ++fcol) {
    if (is_pivot[fcol]) continue;
    Vector v(a.field_ptr(), a.cols());
    v[fcol] = a.field().one();
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = e.reduced(i, fcol);
    basis.push_back(std::move(v));
  }
  Matrix k(a.field_ptr(), basis.size(), a.cols());
  for (std::size_t i = 0; i < basis.size(); ++i) k.set_row(i, basis[i]);
  return k;
}

std::vector<std::size_t> information_set(const Matrix& g) {
  // Greedy column pivoting yields the lexicographically first basis.
  Echelon e = rref(g);
  if (e.rank() < g.rows()) throw SingularMatrix(e.rank());
  return e.pivots;
}

// ---------------------------------------------------------------------------
// Rank metric

BitMatrix expand_over_base(const Vector& v) {
  const unsigned m = v.field().degree();
  BitMatrix b(m, v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    for (unsigned i = 0; i < m; ++i) {
      if (v[j].bit(i)) b.set(i, j, true);
    }
  }
  return b;
}

std::size_t rank_weight(const Vector& v) { return gf2_rank(v.entries()); }

std::size_t column_rank_q(const Matrix& mat) {
  const unsigned m = mat.field().degree();
  BitMatrix cols(mat.cols(), mat.rows() * m);
  for (std::size_t j = 0; j < mat.cols(); ++j) {
    for (std::size_t i = 0; i < mat.rows(); ++i) {
      const Element& e = mat(i, j);
      for (unsigned b = 0; b < m; ++b) {
        if (e.bit(b)) cols.set(j, i * m + b, true);
      }
    }
  }
  return cols.rank();
}

Matrix mul_base(const Matrix& a, const BitMatrix& w) {
  if (a.cols() != w.rows()) throw InvalidArgument("mul_base dimension mismatch");
  Matrix r(a.field_ptr(), a.rows(), w.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t l = 0; l < a.cols(); ++l) {
      if (a(i, l).is_zero()) continue;
      for (std::size_t j = 0; j < w.cols(); ++j) {
        if (w.get(l, j)) r(i, j) += a(i, l);
      }
    }
  }
  return r;
}

Vector mul_base(const Vector& a, const BitMatrix& w) {
  Matrix row(a.field_ptr(), 1, a.size());
  row.set_row(0, a);
  return mul_base(row, w).row(0);
}

// ---------------------------------------------------------------------------
// Serialization

void encode_matrix_into(const Matrix& m, Bytes& out) {
  put_u32(out, static_cast<std::uint32_t>(m.rows()));
  put_u32(out, static_cast<std::uint32_t>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (const auto& e : m.row_span(i)) m.field().encode_into(e, out);
  }
}

Bytes encode_matrix(const Matrix& m) {
  Bytes out;
  encode_matrix_into(m, out);
  return out;
}

Matrix decode_matrix(FieldPtr field, std::span<const std::uint8_t> bytes, std::size_t& offset) {
  require_field(field);
  const std::uint32_t rows = get_u32(bytes, offset);
  const std::uint32_t cols = get_u32(bytes, offset);
  const std::size_t eb = field->byte_length();
  const std::size_t need = std::size_t{rows} * cols * eb;
  if (offset + need > bytes.size()) throw ParseError("truncated matrix payload");
  Matrix m(field, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      m(i, j) = field->decode(bytes.subspan(offset, eb));
      offset += eb;
    }
  }
  return m;
}

}  // namespace gabkron::linalg
