#include <benchmark/benchmark.h>

#include <array>

#include "gabkron/codes/gabidulin.hpp"
#include "gabkron/scheme.hpp"

namespace {

using gabkron::SplitMix64;
using gabkron::linalg::Vector;
namespace scheme = gabkron::scheme;

void BM_FieldMul(benchmark::State& state) {
  const auto f = gabkron::gf2m::Field::standard(static_cast<unsigned>(state.range(0)));
  SplitMix64 rng(1);
  auto a = f->random(rng);
  const auto b = f->random_nonzero(rng);
  for (auto _ : state) {
    a = a * b;
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_FieldMul)->Arg(12)->Arg(90)->Arg(128)->Arg(211);

void BM_FieldInv(benchmark::State& state) {
  const auto f = gabkron::gf2m::Field::standard(static_cast<unsigned>(state.range(0)));
  SplitMix64 rng(2);
  auto a = f->random_nonzero(rng);
  for (auto _ : state) {
    a = f->inv(a);
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_FieldInv)->Arg(90)->Arg(128);

void BM_GabidulinDecode(benchmark::State& state) {
  const auto m = static_cast<unsigned>(state.range(0));
  const auto k = static_cast<std::size_t>(state.range(1));
  const auto f = gabkron::gf2m::Field::standard(m);
  const std::array<std::uint8_t, 1> seed{3};
  const gabkron::codes::GabidulinCode code(scheme::frobenius_support(f->find_normal_element(seed), m, f), k);
  SplitMix64 rng(3);
  const Vector y = code.encode(Vector::random(f, k, rng)) + scheme::sample_rank_error(f, m, code.radius(), rng);
  for (auto _ : state) benchmark::DoNotOptimize(code.decode(y));
}
BENCHMARK(BM_GabidulinDecode)->Args({12, 4})->Args({90, 18})->Unit(benchmark::kMillisecond);

void BM_Keygen(benchmark::State& state, const char* set) {
  const auto p = gabkron::setup(set);
  SplitMix64 rng(4);
  for (auto _ : state) benchmark::DoNotOptimize(scheme::keygen(p, rng));
}
BENCHMARK_CAPTURE(BM_Keygen, toy, "toy-improved")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Keygen, new128, "new-gabkron-128")->Unit(benchmark::kMillisecond)->Iterations(3);

void BM_Encrypt(benchmark::State& state, const char* set) {
  const auto p = gabkron::setup(set);
  SplitMix64 rng(5);
  const auto keys = scheme::keygen(p, rng);
  const Vector m = Vector::random(keys.pk.g_pub.field_ptr(), p.k, rng);
  for (auto _ : state) benchmark::DoNotOptimize(scheme::encrypt(keys.pk, m, rng));
}
BENCHMARK_CAPTURE(BM_Encrypt, toy, "toy-improved")->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_Encrypt, new128, "new-gabkron-128")->Unit(benchmark::kMillisecond);

void BM_Decrypt(benchmark::State& state, const char* set) {
  const auto p = gabkron::setup(set);
  SplitMix64 rng(6);
  const auto keys = scheme::keygen(p, rng);
  const Vector c = scheme::encrypt(keys.pk, Vector::random(keys.pk.g_pub.field_ptr(), p.k, rng), rng);
  for (auto _ : state) benchmark::DoNotOptimize(scheme::decrypt(keys.sk, c));
}
BENCHMARK_CAPTURE(BM_Decrypt, toy, "toy-improved")->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_Decrypt, new128, "new-gabkron-128")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
