#include "goldshift/construction.hpp"
#include "goldshift/markov.hpp"
#include "goldshift/ratio_set.hpp"
#include "goldshift/rn.hpp"
#include "goldshift/torus.hpp"

#include <benchmark/benchmark.h>

using namespace goldshift;

namespace {

const Construction& desk2() {
  static const Construction c = build_measure_spec(2, Profile::desk());
  return c;
}

void BM_Stationary(benchmark::State& st) {
  const auto q = golden_matrix();
  for (auto _ : st) benchmark::DoNotOptimize(stationary_distribution(q));
}
BENCHMARK(BM_Stationary);

void BM_CylinderMeasure(benchmark::State& st) {
  const auto& c = desk2();
  const Word x = sample_window(c.spec, 0, st.range(0) - 1, 7);
  for (auto _ : st) benchmark::DoNotOptimize(cylinder_log_measure(c.spec, x));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_CylinderMeasure)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

void BM_RnAnalyticVsDirect(benchmark::State& st) {
  const auto& c = desk2();
  const BigInt n = c.levels[1].N + 50;
  const BigInt K = last_contributing_index(c.spec.schedule(), n);
  const Word x = sample_window(c.spec, 0, std::max(K + 1, n + 1), 11);
  const bool direct = st.range(0) == 1;
  for (auto _ : st) {
    if (direct) benchmark::DoNotOptimize(rn_direct(c.spec, x, n, K));
    else benchmark::DoNotOptimize(rn_analytic(c.spec, x, n, 2));
  }
  st.SetLabel(direct ? "direct" : "analytic");
}
BENCHMARK(BM_RnAnalyticVsDirect)->Arg(0)->Arg(1);

void BM_RatioSetChunk(benchmark::State& st) {
  RatioSetConfig cfg;
  cfg.samples = 4096;
  cfg.threads = static_cast<unsigned>(st.range(0));
  const Word B = Word::parse("132", -1);
  for (auto _ : st) benchmark::DoNotOptimize(ratio_set_experiment(desk2(), B, cfg));
  st.SetItemsProcessed(st.iterations() * 4096);
}
BENCHMARK(BM_RatioSetChunk)->Arg(1)->Arg(4)->UseRealTime();

void BM_TorusRoundTrip(benchmark::State& st) {
  const TorusPoint p{0.3141592653589793, 0.2718281828459045};
  const int N = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(phi_approx(itinerary(p, N).word));
}
BENCHMARK(BM_TorusRoundTrip)->Arg(8)->Arg(16);

void BM_Pushforward(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(pushforward_check(static_cast<int>(st.range(0))));
}
BENCHMARK(BM_Pushforward)->Arg(2)->Arg(4);

}  // namespace
BENCHMARK_MAIN();
