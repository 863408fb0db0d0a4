#include <benchmark/benchmark.h>

#include <vector>

#include "ebound/bounds.hpp"
#include "ebound/special_functions.hpp"
#include "ebound/states.hpp"
#include "ebound/typical_sets.hpp"

using namespace ebound;

namespace {

void bm_lambert_w0(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(lambert_w0(25464.790894703254));
  }
}
BENCHMARK(bm_lambert_w0);

void bm_gaussian_tail(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(gaussian_upper_tail(2.8387222401661511));
  }
}
BENCHMARK(bm_gaussian_tail);

void bm_atypical_weight_exact(benchmark::State& state) {
  const TwoTermState s(0.3);
  const TypicalWindow w = typical_window(s, 1.0, state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(atypical_weight_exact(s, w));
  }
}
BENCHMARK(bm_atypical_weight_exact)->Arg(1024)->Arg(4096);

void bm_typical_schmidt_log2(benchmark::State& state) {
  const TwoTermState s(0.3);
  const TypicalWindow w = typical_window(s, 1.0, state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(typical_schmidt_log2(s, w));
  }
}
BENCHMARK(bm_typical_schmidt_log2)->Arg(1024)->Arg(4096);

void bm_cc_bound_two_term(benchmark::State& state) {
  const TwoTermState psi1(0.43);
  const SchmidtState psi2({0.14, 0.86}, "");
  const ErrorBudget budget(0.005);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        cc_lower_bound_two_term(psi1, psi2, budget).coefficient);
  }
}
BENCHMARK(bm_cc_bound_two_term);

void bm_omega_t_minimax(benchmark::State& state) {
  const SchmidtState s({0.05, 0.1, 0.15, 0.2, 0.22, 0.28}, "");
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        omega_t(s, OmegaStrategy::minimax_ordering).value);
  }
}
BENCHMARK(bm_omega_t_minimax);

void bm_log2_multinomial(benchmark::State& state) {
  const long n = state.range(0);
  const std::vector<long> counts{n * 3 / 10, n * 3 / 10,
                                 n - n * 3 / 10 - n * 3 / 10};
  for (auto _ : state) {
    benchmark::DoNotOptimize(log2_multinomial(n, counts));
  }
}
BENCHMARK(bm_log2_multinomial)->Arg(2048)->Arg(50000);

}  // namespace

BENCHMARK_MAIN();
