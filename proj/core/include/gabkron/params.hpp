#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gabkron {

enum class Variant : std::uint8_t {
  original = 0,  // validated only; no key generation
  repaired = 1,
  improved = 2,
};

std::string_view variant_name(Variant v);

struct ParamSet {
  std::string name;
  Variant variant = Variant::improved;
  std::uint32_t q = 2;
  std::uint32_t m = 0;
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  std::uint32_t n1 = 0;
  std::uint32_t n2 = 0;
  std::uint32_t k1 = 0;
  std::uint32_t k2 = 0;
  std::uint32_t t = 0;
  std::uint32_t t1 = 0;
  std::uint32_t t2 = 0;
  std::uint32_t lambda = 0;
  std::uint32_t lambda_prime = 0;
  std::uint32_t security = 0;

  friend bool operator==(const ParamSet&, const ParamSet&) = default;
};

/// floor((n2 - k2) / (2 lambda)), the largest t any t1 > 0 could permit.
std::uint32_t t_upper_bound(const ParamSet& p);
/// floor((n2 - k2 - 2 t1) / (2 lambda)), or 0 when negative.
std::uint32_t repaired_t(const ParamSet& p);

/// Human-readable description of every failed constraint; empty if valid.
std::vector<std::string> violations(const ParamSet& p);

/// Throws ParamViolation listing every failed constraint.
void validate(const ParamSet& p);

/// Named sets. Lookup is case-insensitive.
const std::vector<ParamSet>& registry();
std::optional<ParamSet> find_param_set(std::string_view name);

/// Loads a named set and validates it. Throws ParamViolation for unknown
/// names and for sets that fail their constraints.
ParamSet setup(std::string_view name);
/// Fills n, k and t2 when zero, then validates.
ParamSet setup(ParamSet fields);

}  // namespace gabkron
