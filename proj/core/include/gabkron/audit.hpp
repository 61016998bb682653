#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gabkron/linalg/matrix.hpp"
#include "gabkron/params.hpp"
#include "gabkron/random.hpp"

namespace gabkron::audit {

using linalg::Matrix;

/// Key sizes in bits; byte values are bits / 8 and may be fractional.
struct SizeReport {
  std::string set_name;
  Variant variant;
  std::string formula;
  std::uint64_t pk_bits = 0;
  std::optional<std::uint64_t> sk_bits;

  /// Exact when pk_bits is a multiple of 8.
  std::uint64_t pk_bytes() const noexcept { return pk_bits / 8; }
  double sk_bytes() const noexcept { return sk_bits ? static_cast<double>(*sk_bits) / 8.0 : 0.0; }
};

/// Original (claimed): m*n. Repaired: m*k*(n-k) and
/// m*(1 + n2 + lambda + k^2) + lambda*n. Improved: k1*n1*n2*m and
/// m + n1^2*lambda*(m + n2) + k1*n1*m.
SizeReport key_sizes(const ParamSet& p, Variant variant);
inline SizeReport key_sizes(const ParamSet& p) { return key_sizes(p, p.variant); }

/// "258.5K" style: bytes / 1000 rounded to one decimal.
std::string kilobytes(std::uint64_t bytes);

struct FeasibilityReport {
  std::string set_name;
  std::uint32_t claimed_t = 0;
  std::uint32_t bound = 0;
  bool feasible = false;
  std::vector<std::string> violated;
};

/// Compares claimed_t with floor((n2-k2)/(2 lambda)) and lists every
/// violated constraint of p with t replaced by claimed_t.
FeasibilityReport feasibility(const ParamSet& p, std::uint32_t claimed_t);

/// Outcome of searching for a circulant S with S * M = [I | *].
struct CirculantSystematic {
  std::optional<Matrix> s;
  std::string reason;

  bool found() const noexcept { return s.has_value(); }
};

/// A circulant S exists iff the leading k x k block M1 is an invertible
/// circulant, and then S = M1^-1.
CirculantSystematic systematic_via_circulant(const Matrix& m);

/// [C | B] with C a random invertible circulant.
Matrix planted_circulant_instance(const linalg::FieldPtr& field, std::size_t k, std::size_t n,
                                  RandomSource& rng);

/// (G + X) P^-1 from one run of the original key generation: G1 the
/// partial circulant of (alpha^[n1-1], ..., alpha), G2 random, X partial
/// circulant of column rank t1, P = Cir_n(b) with b over V.
Matrix original_pipeline_matrix(const ParamSet& p, RandomSource& rng);

struct FlawReport {
  std::size_t trials = 0;
  std::size_t circulant_found = 0;
  std::size_t singular_leading = 0;
  std::size_t noncirculant_leading = 0;
};

FlawReport demonstrate_original_flaw(const ParamSet& p, RandomSource& rng, std::size_t trials);

/// Parameters used by the flaw demonstration (repaired-style toy fields).
ParamSet flaw_demo_params();

struct LemmaResult {
  std::string name;
  std::size_t trials = 0;
  std::size_t passes = 0;

  bool ok() const noexcept { return passes == trials; }
};

/// Randomized checks at toy scale: factor rank of G1 (x) I, block
/// supercode membership, circulant-block inverse closure, partial circulant
/// times circulant closure, block product closure, circulant inverse closure.
std::vector<LemmaResult> verify_structure_lemmas(RandomSource& rng, std::size_t trials);

/// One reproduced table entry.
struct TableRow {
  std::string table;
  std::string set_name;
  std::string quantity;
  std::uint64_t expected = 0;
  std::uint64_t computed = 0;

  bool match() const noexcept { return expected == computed; }
};

/// Infeasibility bounds and claimed pk sizes of the original sets, t and pk
/// sizes of the repaired sets, and pk sizes of the improved sets, each
/// recomputed from the parameter fields and compared with the published value.
std::vector<TableRow> reproduce_tables();

}  // namespace gabkron::audit
