#include <benchmark/benchmark.h>

#include <algorithm>
#include <vector>

#include "trimedge/distributions.hpp"
#include "trimedge/edgeworth.hpp"
#include "trimedge/estimators.hpp"
#include "trimedge/normal.hpp"
#include "trimedge/population.hpp"
#include "trimedge/rng.hpp"
#include "trimedge/sup_distance.hpp"
#include "trimedge/ustat.hpp"

namespace {

using namespace trimedge;

std::vector<double> exponential_sample(std::size_t n, std::uint64_t seed) {
  RngStream stream(seed, 0);
  return sample(make_model("exponential", {1}), n, stream);
}

void BM_Sample(benchmark::State& state) {
  const auto model = make_model("exponential", {1});
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> out(n);
  RngStream stream(1, 0);
  for (auto _ : state) {
    sample_into(model, stream, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Sample)->Arg(100)->Arg(1600)->Arg(100000);

void BM_ComputePlugins(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = exponential_sample(n, 2);
  const TrimSpec spec(0.1, 0.9, n);
  for (auto _ : state) {
    const SortedSample s(x);
    benchmark::DoNotOptimize(compute_plugins(s, spec));
  }
}
BENCHMARK(BM_ComputePlugins)->Arg(100)->Arg(1600)->Arg(100000);

void BM_Decompose(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = exponential_sample(n, 3);
  const auto pop = compute_functionals(make_model("exponential", {1}), TrimLevels::make(0.1, 0.9));
  for (auto _ : state) benchmark::DoNotOptimize(decompose(x, pop));
}
BENCHMARK(BM_Decompose)->Arg(400)->Arg(6400);

void BM_PopulationFunctionals(benchmark::State& state) {
  const auto model = make_model("normal", {0, 1});
  const auto levels = TrimLevels::make(0.1, 0.9);
  for (auto _ : state) benchmark::DoNotOptimize(compute_functionals(model, levels));
}
BENCHMARK(BM_PopulationFunctionals);

void BM_NormalCdf(benchmark::State& state) {
  double x = -8;
  for (auto _ : state) {
    benchmark::DoNotOptimize(normal_cdf(x));
    x = x > 8 ? -8 : x + 0.001;
  }
}
BENCHMARK(BM_NormalCdf);

void BM_ExpansionCdf(benchmark::State& state) {
  const auto pop = compute_functionals(make_model("exponential", {1}), TrimLevels::make(0.1, 0.9));
  const auto c = population_expansion(pop, TrimSpec(0.1, 0.9, 400), StatisticKind::kStudentized);
  double x = -8;
  for (auto _ : state) {
    benchmark::DoNotOptimize(expansion_cdf(c, x));
    x = x > 8 ? -8 : x + 0.001;
  }
}
BENCHMARK(BM_ExpansionCdf);

void BM_InvertExpansion(benchmark::State& state) {
  const auto pop = compute_functionals(make_model("exponential", {1}), TrimLevels::make(0.1, 0.9));
  const auto c = population_expansion(pop, TrimSpec(0.1, 0.9, 400), StatisticKind::kStudentized);
  for (auto _ : state) benchmark::DoNotOptimize(invert_expansion(c, 0.975));
}
BENCHMARK(BM_InvertExpansion);

void BM_SupDistance(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  RngStream stream(4, 0);
  auto values = sample(make_model("normal", {0, 1}), m, stream);
  std::sort(values.begin(), values.end());
  const auto pop = compute_functionals(make_model("exponential", {1}), TrimLevels::make(0.1, 0.9));
  const auto c = population_expansion(pop, TrimSpec(0.1, 0.9, 400), StatisticKind::kStudentized);
  const auto extra = expansion_stationary_points(c);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sorted_cdf_sup_distance(values, [&](double x) { return expansion_cdf(c, x); }, extra));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SupDistance)->Arg(10000)->Arg(200000);

}  // namespace

BENCHMARK_MAIN();
