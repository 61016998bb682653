#include "gabkron/linalg/circulant.hpp"

#include "gabkron/errors.hpp"

namespace gabkron::linalg {

Matrix partial_circulant(const Vector& a, std::size_t k) {
  const std::size_t n = a.size();
  if (k < 1 || k > n) throw InvalidArgument("partial circulant row count out of range");
  Matrix m(a.field_ptr(), k, n);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = a[(i + n - j) % n];
  }
  return m;
}

Matrix circulant_from_first_row(const Vector& r, std::size_t k) {
  const std::size_t n = r.size();
  if (k < 1 || k > n) throw InvalidArgument("partial circulant row count out of range");
  Matrix m(r.field_ptr(), k, n);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = r[(j + n - i) % n];
  }
  return m;
}

Vector generator_from_first_row(const Vector& r) {
  const std::size_t n = r.size();
  Vector a(r.field_ptr(), n);
  for (std::size_t i = 0; i < n; ++i) a[i] = r[(n - i) % n];
  return a;
}

bool is_partial_circulant(const Matrix& m) {
  const std::size_t n = m.cols();
  if (m.rows() == 0 || m.rows() > n) return false;
  for (std::size_t i = 1; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!(m(i, j) == m(i - 1, (j + n - 1) % n))) return false;
    }
  }
  return true;
}

bool is_circulant(const Matrix& m) { return m.rows() == m.cols() && is_partial_circulant(m); }

bool is_partial_circulant_block(const Matrix& m, std::size_t k2, std::size_t n2) {
  if (k2 == 0 || n2 == 0 || m.rows() % k2 != 0 || m.cols() % n2 != 0) return false;
  for (std::size_t bi = 0; bi < m.rows() / k2; ++bi) {
    for (std::size_t bj = 0; bj < m.cols() / n2; ++bj) {
      if (!is_partial_circulant(m.block(bi * k2, bj * n2, k2, n2))) return false;
    }
  }
  return true;
}

bool is_circulant_block(const Matrix& m, std::size_t n2) {
  return is_partial_circulant_block(m, n2, n2);
}

Matrix circulant_mul_closure(const Matrix& p, const Matrix& q) {
  if (!is_partial_circulant(p)) throw StructureViolation("left factor is not partial circulant");
  if (!is_circulant(q)) throw StructureViolation("right factor is not circulant");
  if (p.cols() != q.rows()) throw InvalidArgument("circulant product dimension mismatch");
  return circulant_from_first_row(p.row(0) * q, p.rows());
}

Matrix circulant_block_compose(const Matrix& b, const Matrix& a, std::size_t k2, std::size_t n2) {
  if (!is_partial_circulant_block(b, k2, n2)) {
    throw StructureViolation("left factor is not partial-circulant-block");
  }
  if (!is_circulant_block(a, n2)) throw StructureViolation("right factor is not circulant-block");
  Matrix q = b * a;
  if (!is_partial_circulant_block(q, k2, n2)) {
    throw StructureViolation("block product lost partial-circulant structure");
  }
  return q;
}

Matrix circulant_block_invert(const Matrix& a, std::size_t n2) {
  if (!is_circulant_block(a, n2)) throw StructureViolation("matrix is not circulant-block");
  Matrix inv = inverse(a);
  if (!is_circulant_block(inv, n2)) throw StructureViolation("inverse is not circulant-block");
  return inv;
}

}  // namespace gabkron::linalg
