// Microbenchmarks for the hot paths: context construction, the brute-force
// character sums, the O(p^2)-ish pair counts, the difference products, and
// the per-root permutation signs. Sizes use the largest primes of the right
// class below 10^4 so the numbers line up with full-scan behavior.

#include <benchmark/benchmark.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "quartic/arith.hpp"
#include "quartic/counts.hpp"
#include "quartic/cyclo.hpp"
#include "quartic/jacobsthal.hpp"
#include "quartic/perm.hpp"

using namespace quartic;

namespace {

uint64_t largest_prime_1mod8_below(uint64_t hi) {
  const auto ps = primes_in_range(17, hi, CongruenceFilter{1, 8});
  return ps.back();
}

void BM_PrimeContextBuild(benchmark::State& state) {
  const uint64_t p = largest_prime_1mod8_below(static_cast<uint64_t>(state.range(0)));
  for (auto _ : state) {
    PrimeContext ctx(p);
    benchmark::DoNotOptimize(ctx.qr_half().size());
  }
  state.SetLabel("p=" + std::to_string(p));
}
BENCHMARK(BM_PrimeContextBuild)->Arg(1000)->Arg(10000);

void BM_Phi2Brute(benchmark::State& state) {
  const PrimeContext ctx(largest_prime_1mod8_below(static_cast<uint64_t>(state.range(0))));
  uint64_t m = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(jacobsthal::phi_k(ctx, m, 2));
    m = m % (ctx.p() - 1) + 1;
  }
  state.SetLabel("p=" + std::to_string(ctx.p()));
}
BENCHMARK(BM_Phi2Brute)->Arg(1000)->Arg(10000);

void BM_NHistogram(benchmark::State& state) {
  const PrimeContext ctx(largest_prime_1mod8_below(static_cast<uint64_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(counts::n_histogram(ctx).size());
  state.SetLabel("p=" + std::to_string(ctx.p()));
}
BENCHMARK(BM_NHistogram)->Arg(1000)->Arg(10000);

void BM_RmRecordLoop(benchmark::State& state) {
  const PrimeContext ctx(largest_prime_1mod8_below(10000));
  for (auto _ : state)
    benchmark::DoNotOptimize(counts::rm_record(ctx, 5, counts::RmStrategy::Loop).l_size);
}
BENCHMARK(BM_RmRecordLoop);

void BM_RmRecordBitset(benchmark::State& state) {
  const PrimeContext ctx(largest_prime_1mod8_below(10000));
  for (auto _ : state)
    benchmark::DoNotOptimize(counts::rm_record(ctx, 5, counts::RmStrategy::Bitset).l_size);
}
BENCHMARK(BM_RmRecordBitset);

void BM_WProduct(benchmark::State& state) {
  const PrimeContext ctx(largest_prime_1mod8_below(static_cast<uint64_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(perm::w_product(ctx).value);
  state.SetLabel("p=" + std::to_string(ctx.p()));
}
BENCHMARK(BM_WProduct)->Arg(1000)->Arg(10000);

void BM_PermSign(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::vector<uint64_t> src(n);
  std::iota(src.begin(), src.end(), uint64_t{1});
  std::vector<uint64_t> dst = src;
  std::shuffle(dst.begin(), dst.end(), std::mt19937_64(7));
  for (auto _ : state) benchmark::DoNotOptimize(perm::perm_sign(src, dst));
}
BENCHMARK(BM_PermSign)->Range(256, 4096);

void BM_AllRootTauSigns(benchmark::State& state) {
  const PrimeContext ctx(largest_prime_1mod8_below(static_cast<uint64_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(perm::all_root_tau_signs(ctx).size());
  state.SetLabel("p=" + std::to_string(ctx.p()) +
                 " roots=" + std::to_string(ctx.primitive_roots().size()));
}
BENCHMARK(BM_AllRootTauSigns)->Arg(1000)->Arg(5000)->Arg(10000);

void BM_CyclotomicPolynomial(benchmark::State& state) {
  const uint64_t n = static_cast<uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cyclo::cyclotomic_polynomial(n).size());
}
BENCHMARK(BM_CyclotomicPolynomial)->Arg(105)->Arg(1155);

}  // namespace

BENCHMARK_MAIN();
