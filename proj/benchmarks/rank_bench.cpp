#include <benchmark/benchmark.h>

#include "tsd/closure.hpp"
#include "tsd/exact_rank.hpp"
#include "tsd/incidence.hpp"

namespace {

tsd::IntMatrix composed_n2() {
  static const tsd::IntMatrix m =
      tsd::build_incidence(tsd::compose(tsd::affine_plane(5), tsd::SeedCatalog::builtin()), 2).to_dense();
  return m;
}

tsd::IntMatrix tripled_sts9_n2() {
  // Singular, so rank_certified falls through to exact elimination.
  static const tsd::IntMatrix m = [] {
    const tsd::Design sts9 = tsd::affine_plane(3);
    return tsd::build_incidence(tsd::scale_copies(sts9, 3), 2).to_dense();
  }();
  return m;
}

void BM_RankExactSeed9(benchmark::State& state) {
  const auto m = tsd::build_incidence(tsd::seed(9), 2).to_dense();
  for (auto _ : state) benchmark::DoNotOptimize(tsd::rank_exact_integer(m));
}
BENCHMARK(BM_RankExactSeed9);

void BM_RankExactComposed25(benchmark::State& state) {
  const auto m = composed_n2();
  for (auto _ : state) benchmark::DoNotOptimize(tsd::rank_exact_integer(m));
  state.SetLabel("300x300");
}
BENCHMARK(BM_RankExactComposed25)->Unit(benchmark::kMillisecond);

void BM_RankModP(benchmark::State& state) {
  const auto m = composed_n2();
  const auto p = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tsd::rank_mod_p(m, p));
}
BENCHMARK(BM_RankModP)->Arg(2)->Arg(3)->Arg(1000003)->Arg(2305843009213693951)->Unit(benchmark::kMicrosecond);

void BM_RankCertifiedNonsingular(benchmark::State& state) {
  const auto m = composed_n2();
  const std::uint64_t primes[] = {2, 3};
  for (auto _ : state) benchmark::DoNotOptimize(tsd::rank_certified(m, primes, 0));
}
BENCHMARK(BM_RankCertifiedNonsingular)->Unit(benchmark::kMicrosecond);

void BM_RankCertifiedSingular(benchmark::State& state) {
  const auto m = tripled_sts9_n2();
  const std::uint64_t primes[] = {2, 3};
  for (auto _ : state) benchmark::DoNotOptimize(tsd::rank_certified(m, primes, 0));
}
BENCHMARK(BM_RankCertifiedSingular)->Unit(benchmark::kMicrosecond);

}  // namespace
