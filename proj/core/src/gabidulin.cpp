#include "gabkron/codes/gabidulin.hpp"

#include <algorithm>
#include <vector>

#include "gabkron/errors.hpp"

namespace gabkron::codes {

namespace {

using gf2m::Element;
using gf2m::Field;

// Linearized polynomials are coefficient vectors; entry i multiplies x^(2^i).
using LinPoly = std::vector<Element>;

std::size_t top_degree(const LinPoly& p) {
  std::size_t d = p.size();
  while (d > 0 && p[d - 1].is_zero()) --d;
  return d == 0 ? 0 : d - 1;
}

// Right factor f of n = v o f with deg f < k, or nullopt if the division
// leaves a remainder. (v o f) has coefficient sum_a v_a f_b^[a] at x^[a+b].
std::optional<LinPoly> left_divide(const Field& field, const LinPoly& v, const LinPoly& n,
                                   std::size_t k) {
  const std::size_t dv = top_degree(v);
  const unsigned m = field.degree();
  const Element lead_inv = field.inv(v[dv]);
  LinPoly f(k, field.zero());
  for (std::size_t s = k; s-- > 0;) {
    Element acc = dv + s < n.size() ? n[dv + s] : field.zero();
    for (std::size_t a = 0; a < dv; ++a) {
      const std::size_t b = dv + s - a;
      if (b < k && !v[a].is_zero()) acc += v[a] * field.frobenius(f[b], static_cast<unsigned>(a % m));
    }
    const Element top = acc * lead_inv;
    f[s] = field.frobenius(top, static_cast<unsigned>((m - dv % m) % m));
  }
  // Low coefficients of n must also agree with v o f.
  for (std::size_t d = 0; d < n.size(); ++d) {
    Element acc = field.zero();
    for (std::size_t a = 0; a <= dv && a <= d; ++a) {
      const std::size_t b = d - a;
      if (b < k) acc += v[a] * field.frobenius(f[b], static_cast<unsigned>(a % m));
    }
    if (!(acc == n[d])) return std::nullopt;
  }
  return f;
}

}  // namespace

GabidulinCode::GabidulinCode(Vector g, std::size_t k) : g_(std::move(g)), k_(k) {
  const std::size_t n = g_.size();
  if (n == 0 || n > g_.field().degree()) throw InvalidArgument("Gabidulin length must be in [1, m]");
  if (k < 1 || k > n) throw InvalidArgument("Gabidulin dimension must be in [1, n]");
  if (linalg::rank_weight(g_) != n) throw InvalidArgument("Gabidulin support has deficient rank weight");
  gen_ = moore(g_, k_);
  parity_ = linalg::right_kernel(gen_);
}

Matrix GabidulinCode::moore(const Vector& g, std::size_t rows) {
  const auto& f = g.field();
  Matrix m(g.field_ptr(), rows, g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    Element x = g[j];
    for (std::size_t i = 0; i < rows; ++i) {
      m(i, j) = x;
      x = f.square(x);
    }
  }
  return m;
}

Vector GabidulinCode::encode(const Vector& u) const {
  if (u.size() != k_) throw InvalidArgument("message length differs from code dimension");
  return u * gen_;
}

std::optional<GabDecoded> GabidulinCode::decode(const Vector& y) const {
  const std::size_t n = length();
  if (y.size() != n) throw InvalidArgument("received word length differs from code length");
  const auto& f = g_.field();
  const std::size_t t = radius();

  // Welch-Berlekamp: V(y_j) = N(g_j) with deg_q V <= t, deg_q N <= k + t - 1.
  const std::size_t nv = t + 1;
  const std::size_t nn = k_ + t;
  Matrix sys(g_.field_ptr(), n, nv + nn);
  for (std::size_t j = 0; j < n; ++j) {
    Element p = y[j];
    for (std::size_t a = 0; a < nv; ++a) {
      sys(j, a) = p;
      p = f.square(p);
    }
    Element q = g_[j];
    for (std::size_t b = 0; b < nn; ++b) {
      sys(j, nv + b) = q;
      q = f.square(q);
    }
  }
  const Matrix kernel = linalg::right_kernel(sys);
  if (kernel.rows() == 0) return std::nullopt;

  const auto sol = kernel.row_span(0);
  LinPoly v(sol.begin(), sol.begin() + static_cast<std::ptrdiff_t>(nv));
  LinPoly num(sol.begin() + static_cast<std::ptrdiff_t>(nv), sol.end());
  if (std::all_of(v.begin(), v.end(), [](const Element& e) { return e.is_zero(); })) {
    return std::nullopt;
  }
  auto coeffs = left_divide(f, v, num, k_);
  if (!coeffs) return std::nullopt;

  Vector u(g_.field_ptr(), std::move(*coeffs));
  Vector c = encode(u);
  Vector e = y - c;
  if (linalg::rank_weight(e) > t) return std::nullopt;
  return GabDecoded{std::move(u), std::move(e)};
}

}  // namespace gabkron::codes
