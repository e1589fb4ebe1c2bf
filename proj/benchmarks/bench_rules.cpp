#include <benchmark/benchmark.h>

#include "mudra/enumerate.hpp"
#include "mudra/fairness.hpp"
#include "mudra/reproduce.hpp"
#include "mudra/rules.hpp"
#include "mudra/strategy.hpp"

namespace {

mudra::PreferenceProfile spread_profile(std::size_t n, std::size_t c) {
  const mudra::Instance inst = mudra::Instance::numbered(n, c);
  std::vector<mudra::Order> orders;
  const std::size_t m = n * c;
  for (std::size_t i = 0; i < n; ++i) {
    mudra::Order order(m);
    for (std::size_t k = 0; k < m; ++k) order[k] = (k * (i + 1) + i) % m;
    // Repair collisions so the order stays a permutation.
    std::vector<bool> seen(m, false);
    std::size_t fill = 0;
    for (auto& o : order) {
      if (seen[o]) {
        while (seen[fill]) ++fill;
        o = fill;
      }
      seen[o] = true;
    }
    orders.push_back(order);
  }
  return mudra::PreferenceProfile(inst, orders);
}

void BM_Mps(benchmark::State& state) {
  const auto profile = spread_profile(state.range(0), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(mudra::mps(profile));
}
BENCHMARK(BM_Mps)->Args({2, 2})->Args({4, 2})->Args({8, 4})->Args({16, 4});

void BM_Ops(benchmark::State& state) {
  const auto profile = spread_profile(state.range(0), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(mudra::ops(profile));
}
BENCHMARK(BM_Ops)->Args({2, 2})->Args({4, 2})->Args({8, 4})->Args({16, 4});

void BM_RandomPriority(benchmark::State& state) {
  const auto profile = spread_profile(state.range(0), 1);
  for (auto _ : state) benchmark::DoNotOptimize(mudra::random_priority(profile));
}
BENCHMARK(BM_RandomPriority)->DenseRange(3, 7, 2);

void BM_EnvyFree(benchmark::State& state) {
  const auto profile = spread_profile(state.range(0), 2);
  const auto p = mudra::mps(profile);
  for (auto _ : state) benchmark::DoNotOptimize(mudra::is_sd_envy_free(p, profile));
}
BENCHMARK(BM_EnvyFree)->Arg(4)->Arg(16);

void BM_WeakSdManipulationSearch(benchmark::State& state) {
  const auto profile = mudra::contested_profile();
  const mudra::Rule rule = mudra::make_rule(mudra::RuleKind::Mps);
  for (auto _ : state) benchmark::DoNotOptimize(mudra::find_weak_sd_manipulation(rule, profile, 0));
}
BENCHMARK(BM_WeakSdManipulationSearch);

void BM_DomainMps(benchmark::State& state) {
  const mudra::ProfileDomain domain(2, 2);
  for (auto _ : state) {
    for (std::size_t k = 0; k < domain.size(); ++k) benchmark::DoNotOptimize(mudra::mps(domain.at(k)));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(domain.size()));
}
BENCHMARK(BM_DomainMps)->Unit(benchmark::kMillisecond);

}  // namespace
