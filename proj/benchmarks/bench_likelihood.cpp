#include <benchmark/benchmark.h>

#include <vector>

#include "pullfit/estimation.hpp"
#include "pullfit/kde.hpp"
#include "pullfit/observer.hpp"
#include "pullfit/random.hpp"

using namespace pullfit;

namespace {

const FitContext& line_context() {
  static const FitContext ctx = [] {
    const auto trials = simulate_dataset(default_design(), ObserverParams{},
                                         SimulationCounts{}, CompoundConfig::LineBar, 1);
    return *make_fit_context(trials, SeriesKind::Line);
  }();
  return ctx;
}

void BM_BuildKde(benchmark::State& state) {
  Rng rng(3);
  std::vector<double> samples(static_cast<std::size_t>(state.range(0)));
  for (double& s : samples) s = rng.normal(100.0, 6.0);
  const double h = silverman_bandwidth(samples);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_kde(samples, h));
  }
}
BENCHMARK(BM_BuildKde)->Arg(1000)->Arg(10000);

void BM_CrnObjective(benchmark::State& state) {
  const FitConfig cfg;
  const CrnObjective objective(line_context(), cfg, 5);
  double w = 0.9;
  for (auto _ : state) {
    benchmark::DoNotOptimize(objective(w));
    w = w < 0.99 ? w + 0.001 : 0.9;
  }
}
BENCHMARK(BM_CrnObjective);

void BM_FitWeight(benchmark::State& state) {
  const FitConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_weight(line_context(), cfg, 5, 0.95));
  }
}
BENCHMARK(BM_FitWeight)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
