#include <benchmark/benchmark.h>

#include "mudra/efficiency.hpp"
#include "mudra/ratlp.hpp"
#include "mudra/reproduce.hpp"
#include "mudra/rules.hpp"

namespace {

void BM_SdEfficiencyLp(benchmark::State& state) {
  const auto profile = mudra::timeline_profile();
  const auto p = mudra::mps(profile);
  for (auto _ : state) benchmark::DoNotOptimize(mudra::is_sd_efficient(p, profile));
}
BENCHMARK(BM_SdEfficiencyLp);

void BM_ExPostBalanced(benchmark::State& state) {
  const auto profile = mudra::timeline_profile();
  const auto p = mudra::mps(profile);
  for (auto _ : state) benchmark::DoNotOptimize(mudra::is_ex_post_efficient(p, profile, false));
}
BENCHMARK(BM_ExPostBalanced);

void BM_ExPostUnbalanced(benchmark::State& state) {
  const auto profile = mudra::timeline_profile();
  const auto p = mudra::mps(profile);
  for (auto _ : state) benchmark::DoNotOptimize(mudra::is_ex_post_efficient(p, profile, true));
}
BENCHMARK(BM_ExPostUnbalanced);

void BM_DecomposeLottery(benchmark::State& state) {
  const auto p = mudra::random_priority(mudra::paired_types_profile());
  for (auto _ : state) benchmark::DoNotOptimize(mudra::decompose_lottery(p));
}
BENCHMARK(BM_DecomposeLottery);

// Dense feasibility system: sum of x equals k, each x at most 1.
void BM_SimplexBox(benchmark::State& state) {
  const std::size_t n = state.range(0);
  mudra::ratlp::LinearProgram lp;
  for (std::size_t j = 0; j < n; ++j) lp.add_variable("x" + std::to_string(j));
  lp.add_constraint(std::vector<mudra::Rational>(n, mudra::Rational(1)),
                    mudra::ratlp::Relation::Equal, mudra::Rational(static_cast<long>(n / 2)));
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<mudra::Rational> row(n);
    row[j] = 1;
    lp.add_constraint(row, mudra::ratlp::Relation::LessEqual, mudra::Rational(1));
  }
  std::vector<mudra::Rational> objective;
  for (std::size_t j = 0; j < n; ++j) objective.emplace_back(static_cast<long>(j % 5), 3);
  lp.set_objective(objective, mudra::ratlp::Sense::Maximize);
  for (auto _ : state) benchmark::DoNotOptimize(mudra::ratlp::solve(lp));
}
BENCHMARK(BM_SimplexBox)->RangeMultiplier(2)->Range(8, 32);

}  // namespace
