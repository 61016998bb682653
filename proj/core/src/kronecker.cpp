#include "gabkron/codes/kronecker.hpp"

#include <algorithm>

#include "gabkron/errors.hpp"

namespace gabkron::codes {

namespace {

// Calls fn on each k-subset of `pool` in lexicographic order until it returns true.
template <typename Fn>
bool for_each_subset(const std::vector<std::size_t>& pool, std::size_t k, Fn&& fn) {
  if (k > pool.size()) return false;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  std::vector<std::size_t> chosen(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) chosen[i] = pool[idx[i]];
    if (fn(chosen)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == pool.size() - k + (i - 1)) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

KroneckerCode::KroneckerCode(Matrix g1, GabidulinCode c2) : g1_(std::move(g1)), c2_(std::move(c2)) {
  if (g1_.field_ptr() != c2_.field_ptr() && !g1_.field().compatible(*c2_.field_ptr())) {
    throw FieldMismatch();
  }
  info_set_ = linalg::information_set(g1_);
  const auto& field = g1_.field_ptr();
  g_ = linalg::kron(g1_, c2_.generator());
  gbar1_ = linalg::kron(g1_, Matrix::identity(field, k2()));
  Matrix ident_n1 = Matrix::identity(field, n1());
  gbar2_ = linalg::kron(ident_n1, c2_.generator());
}

Vector KroneckerCode::encode(const Vector& m) const {
  if (m.size() != dimension()) throw InvalidArgument("message length differs from code dimension");
  return m * g_;
}

bool KroneckerCode::check_factor_rank() const { return linalg::rank(gbar1_) == dimension(); }

bool KroneckerCode::in_block_supercode(const Vector& c) const {
  if (c.size() != length()) throw InvalidArgument("word length differs from code length");
  for (std::size_t j = 0; j < n1(); ++j) {
    if (!linalg::solve_left(c2_.generator(), c.slice(j * n2(), n2()))) return false;
  }
  return true;
}

std::optional<Vector> KroneckerCode::solve_message(const std::vector<Vector>& block_msgs,
                                                   const std::vector<std::size_t>& set) const {
  // Row j of U is u_j = sum_i g1(i, j) m_i, so U = G1[:, I]^T M.
  Matrix sub = g1_.select_columns(set).transpose();
  Matrix u(g1_.field_ptr(), k1(), k2());
  for (std::size_t r = 0; r < set.size(); ++r) u.set_row(r, block_msgs[set[r]]);
  Matrix inv;
  try {
    inv = linalg::inverse(sub);
  } catch (const SingularMatrix&) {
    return std::nullopt;
  }
  Matrix msg = inv * u;
  Vector out(g1_.field_ptr(), dimension());
  for (std::size_t i = 0; i < k1(); ++i) out.set_slice(i * k2(), msg.row(i));
  return out;
}

KronDecoded KroneckerCode::decode(const Vector& y, std::span<const std::size_t> preferred) const {
  if (y.size() != length()) throw InvalidArgument("received word length differs from code length");
  KronDecoded result;
  std::vector<Vector> block_msgs(n1());
  std::vector<bool> ok(n1(), false);
  std::vector<std::size_t> good;
  for (std::size_t j = 0; j < n1(); ++j) {
    auto d = c2_.decode(y.slice(j * n2(), n2()));
    if (d) {
      block_msgs[j] = std::move(d->message);
      ok[j] = true;
      good.push_back(j);
    } else {
      result.failed_blocks.push_back(j);
    }
  }

  auto attempt = [&](const std::vector<std::size_t>& set) {
    auto m = solve_message(block_msgs, set);
    if (!m) return false;
    result.message = std::move(m);
    result.info_set = set;
    return true;
  };

  if (preferred.size() == k1() &&
      std::all_of(preferred.begin(), preferred.end(), [&](std::size_t j) { return j < n1() && ok[j]; })) {
    if (attempt(std::vector<std::size_t>(preferred.begin(), preferred.end()))) return result;
  }
  for_each_subset(good, k1(), attempt);
  return result;
}

}  // namespace gabkron::codes
