#include "gabkron/params.hpp"

#include <algorithm>
#include <cctype>

#include "gabkron/errors.hpp"

namespace gabkron {

namespace {

ParamSet make(std::string name, Variant v, std::uint32_t n1, std::uint32_t k1, std::uint32_t n2,
              std::uint32_t k2, std::uint32_t m, std::uint32_t t, std::uint32_t t1,
              std::uint32_t lambda, std::uint32_t lambda_prime, std::uint32_t security) {
  ParamSet p;
  p.name = std::move(name);
  p.variant = v;
  p.m = m;
  p.n1 = n1;
  p.k1 = k1;
  p.n2 = n2;
  p.k2 = k2;
  p.n = n1 * n2;
  p.k = k1 * k2;
  p.t = t;
  p.t1 = t1;
  p.t2 = (n2 - k2) / 2;
  p.lambda = lambda;
  p.lambda_prime = lambda_prime;
  p.security = security;
  return p;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string str(std::uint64_t v) { return std::to_string(v); }

}  // namespace

std::string_view variant_name(Variant v) {
  switch (v) {
    case Variant::original: return "original";
    case Variant::repaired: return "repaired";
    case Variant::improved: return "improved";
  }
  return "unknown";
}

std::uint32_t t_upper_bound(const ParamSet& p) {
  if (p.lambda == 0 || p.n2 < p.k2) return 0;
  return (p.n2 - p.k2) / (2 * p.lambda);
}

std::uint32_t repaired_t(const ParamSet& p) {
  if (p.lambda == 0) return 0;
  const std::int64_t num = std::int64_t{p.n2} - p.k2 - 2 * std::int64_t{p.t1};
  return num < 0 ? 0 : static_cast<std::uint32_t>(num / (2 * std::int64_t{p.lambda}));
}

std::vector<std::string> violations(const ParamSet& p) {
  std::vector<std::string> v;
  auto need = [&](bool ok, std::string what) {
    if (!ok) v.push_back(std::move(what));
  };

  need(p.q == 2, "q = 2 required (got " + str(p.q) + ")");
  need(p.m >= 2 && p.m <= 512, "2 <= m <= 512 (got m = " + str(p.m) + ")");
  need(p.n == p.n1 * p.n2, "n = n1*n2 (" + str(p.n) + " != " + str(std::uint64_t{p.n1} * p.n2) + ")");
  need(p.k == p.k1 * p.k2, "k = k1*k2 (" + str(p.k) + " != " + str(std::uint64_t{p.k1} * p.k2) + ")");
  need(p.k1 >= 1 && p.k1 <= p.n1, "1 <= k1 <= n1");
  need(p.k2 >= 1 && p.k2 < p.n2, "1 <= k2 < n2");
  need(p.lambda >= 2, "lambda >= 2 (got " + str(p.lambda) + ")");
  need(p.lambda <= p.m, "lambda <= m");
  need(p.t >= 1, "t >= 1");
  if (!v.empty() && (p.n2 <= p.k2 || p.lambda == 0)) return v;

  const std::uint32_t half = (p.n2 - p.k2) / 2;
  switch (p.variant) {
    case Variant::original: {
      need(p.k < p.n && p.n <= p.m, "k < n <= m");
      const std::uint32_t bound = t_upper_bound(p);
      need(p.t <= bound, "t = " + str(p.t) + " exceeds floor((n2-k2)/(2*lambda)) = " + str(bound));
      break;
    }
    case Variant::repaired: {
      need(p.k < p.n && p.n <= p.m, "k < n <= m");
      need(p.t1 > 0 && p.t1 <= half, "0 < t1 <= floor((n2-k2)/2) = " + str(half));
      const std::uint32_t expect = repaired_t(p);
      need(p.t == expect,
           "t = floor((n2-k2-2*t1)/(2*lambda)) = " + str(expect) + " (got " + str(p.t) + ")");
      need(p.t2 == half, "t2 = floor((n2-k2)/2) = " + str(half) + " (got " + str(p.t2) + ")");
      need(std::uint64_t{p.t} <= std::uint64_t{p.n1} * p.t2, "t <= n1*t2");
      need(p.t1 > 0 && p.n % p.t1 == 0, "t1 divides n");
      break;
    }
    case Variant::improved: {
      need(p.n2 == p.m, "n2 = m (" + str(p.n2) + " != " + str(p.m) + ")");
      need(p.lambda_prime >= 2 && p.lambda_prime <= p.lambda, "2 <= lambda' <= lambda");
      need(p.t2 == half, "t2 = floor((n2-k2)/2) = " + str(half) + " (got " + str(p.t2) + ")");
      need(p.t1 >= 1, "t1 >= 1");
      need(std::uint64_t{p.lambda_prime} * p.t + p.t1 <= p.t2,
           "lambda'*t + t1 <= t2 (" + str(std::uint64_t{p.lambda_prime} * p.t + p.t1) + " > " +
               str(p.t2) + ")");
      need(p.t1 > 0 && p.n2 % p.t1 == 0, "t1 divides n2");
      break;
    }
  }
  return v;
}

void validate(const ParamSet& p) {
  auto v = violations(p);
  if (!v.empty()) throw ParamViolation(std::move(v));
}

const std::vector<ParamSet>& registry() {
  static const std::vector<ParamSet> sets = {
      make("gabkron-128-original", Variant::original, 2, 2, 24, 12, 48, 12, 0, 3, 0, 128),
      make("gabkron-192-original", Variant::original, 2, 2, 38, 19, 76, 16, 0, 3, 0, 192),
      make("gabkron-256-original", Variant::original, 2, 2, 52, 26, 104, 24, 0, 3, 0, 256),
      make("rep-gabkron-128", Variant::repaired, 2, 2, 105, 35, 211, 9, 7, 3, 0, 128),
      make("rep-gabkron-192", Variant::repaired, 2, 2, 150, 50, 307, 13, 10, 3, 0, 192),
      make("rep-gabkron-256", Variant::repaired, 2, 2, 165, 55, 331, 14, 11, 3, 0, 256),
      make("new-gabkron-128", Variant::improved, 2, 2, 90, 18, 90, 12, 6, 3, 2, 128),
      make("new-gabkron-192", Variant::improved, 2, 2, 120, 32, 120, 14, 8, 3, 2, 192),
      make("new-gabkron-256", Variant::improved, 2, 2, 128, 40, 128, 14, 8, 3, 2, 256),
      make("toy-improved", Variant::improved, 2, 2, 12, 4, 12, 1, 1, 3, 2, 0),
      make("toy-improved-3x2", Variant::improved, 3, 2, 12, 4, 12, 1, 1, 3, 2, 0),
      make("toy-repaired", Variant::repaired, 2, 2, 12, 4, 24, 1, 2, 2, 0, 0),
  };
  return sets;
}

std::optional<ParamSet> find_param_set(std::string_view name) {
  const std::string key = lower(name);
  for (const auto& p : registry()) {
    if (p.name == key) return p;
  }
  return std::nullopt;
}

ParamSet setup(std::string_view name) {
  auto p = find_param_set(name);
  if (!p) throw ParamViolation({"unknown parameter set '" + std::string(name) + "'"});
  validate(*p);
  return *p;
}

ParamSet setup(ParamSet fields) {
  if (fields.n == 0) fields.n = fields.n1 * fields.n2;
  if (fields.k == 0) fields.k = fields.k1 * fields.k2;
  if (fields.t2 == 0 && fields.n2 > fields.k2) fields.t2 = (fields.n2 - fields.k2) / 2;
  validate(fields);
  return fields;
}

}  // namespace gabkron
