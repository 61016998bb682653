#pragma once

#include <cstddef>

#include "gabkron/linalg/matrix.hpp"

namespace gabkron::linalg {

/// k x n matrix with entry (i, j) = a[(i - j) mod n]. Row 0 is
/// (a0, a_{n-1}, ..., a1) and each row is the right cyclic shift of the one
/// above. Throws InvalidArgument unless 1 <= k <= n.
Matrix partial_circulant(const Vector& a, std::size_t k);
inline Matrix circulant(const Vector& a) { return partial_circulant(a, a.size()); }

/// Same family, parametrised by the first row r: entry (i, j) = r[(j - i) mod n].
Matrix circulant_from_first_row(const Vector& r, std::size_t k);
/// Generating vector a with partial_circulant(a, k).row(0) == r.
Vector generator_from_first_row(const Vector& r);

bool is_partial_circulant(const Matrix& m);
bool is_circulant(const Matrix& m);
/// Every n2 x n2 block is circulant. Requires n2 to divide both dimensions.
bool is_circulant_block(const Matrix& m, std::size_t n2);
/// Every k2 x n2 block is partial circulant.
bool is_partial_circulant_block(const Matrix& m, std::size_t k2, std::size_t n2);

/// P * Q for a partial circulant P and a square circulant Q. Only the first
/// row of the product is computed; the rest follow from the shift structure.
/// Throws StructureViolation on malformed inputs.
Matrix circulant_mul_closure(const Matrix& p, const Matrix& q);

/// B * A for partial-circulant-block B and circulant-block A; the result is
/// checked to be partial-circulant-block.
Matrix circulant_block_compose(const Matrix& b, const Matrix& a, std::size_t k2, std::size_t n2);
/// Inverse of a circulant-block matrix, checked to be circulant-block.
/// Throws SingularMatrix or StructureViolation.
Matrix circulant_block_invert(const Matrix& a, std::size_t n2);

}  // namespace gabkron::linalg
