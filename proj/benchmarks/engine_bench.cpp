#include <benchmark/benchmark.h>

#include "numberless/family.hpp"
#include "numberless/lasso.hpp"
#include "numberless/buchi.hpp"
#include "numberless/search.hpp"
#include "numberless/semantics.hpp"
#include "numberless/verification.hpp"

using namespace numberless;

static void BM_AcceptFig1(benchmark::State& state) {
  const auto pa = fig1_instance(Rational(3, 4), Rational(1, 4));
  const auto word = fig1_family(pa.alphabet()).expand({{"n", 4}, {"m", static_cast<unsigned long>(state.range(0))}});
  for (auto _ : state) benchmark::DoNotOptimize(accept_prob(pa, word));
  state.SetComplexityN(static_cast<long>(word.size()));
}
BENCHMARK(BM_AcceptFig1)->RangeMultiplier(4)->Range(1, 256)->Complexity();

static void BM_FamilyEvalSquaring(benchmark::State& state) {
  const auto pa = fig1_instance(Rational(3, 4), Rational(1, 4));
  const auto tmpl = fig1_family(pa.alphabet());
  const Bindings b{{"n", 8}, {"m", static_cast<unsigned long>(state.range(0))}};
  for (auto _ : state) benchmark::DoNotOptimize(family_eval(pa, tmpl, b));
}
BENCHMARK(BM_FamilyEvalSquaring)->RangeMultiplier(8)->Range(8, 4096);

static void BM_ExhaustiveSearch(benchmark::State& state) {
  const auto pa = fig1_instance(Rational(3, 4), Rational(1, 4));
  const SearchBudget budget{static_cast<std::size_t>(state.range(0)), 0};
  std::size_t explored = 0;
  for (auto _ : state) explored = value_lower_bound(pa, budget).explored;
  state.counters["distributions"] = static_cast<double>(explored);
}
BENCHMARK(BM_ExhaustiveSearch)->DenseRange(8, 24, 8)->Unit(benchmark::kMillisecond);

static void BM_LassoFig1(benchmark::State& state) {
  const auto ba = buchi_reduction(fig1_instance(Rational(3, 4), Rational(1, 4)));
  const LassoWord w{{}, parse_word(ba.automaton.alphabet(), "i a a f #")};
  for (auto _ : state) benchmark::DoNotOptimize(lasso_prob(ba, w));
}
BENCHMARK(BM_LassoFig1);

BENCHMARK_MAIN();
