// Compares the OpenMP kernels against their serial reference paths.

#include <benchmark/benchmark.h>

#include <vector>

#include "knotlab/experiment.hpp"
#include "knotlab/sampling.hpp"

using namespace knotlab;

namespace {

const KnotTable &table() {
  static const KnotTable t = build_table(default_table_path());
  return t;
}

const DirectionSet &directions() {
  static const DirectionSet d = build_direction_set(100);
  return d;
}

const std::vector<HostSample> &hosts() {
  static const auto h =
      harvest_hosts({KnotLabel::parse("+3_1"), KnotLabel::parse("4_1")}, 2, 100, 11, table())
          .hosts;
  return h;
}

CampaignConfig campaign(int threads) {
  CampaignConfig c;
  c.k_list = {30, 60, 90};
  c.starts_per_k = 4;
  c.closures = 20;
  c.seed = 11;
  c.threads = threads;
  return c;
}

void BM_AccuracySerial(benchmark::State &state) {
  const auto c = campaign(1);
  for (auto _ : state)
    benchmark::DoNotOptimize(run_accuracy_serial(hosts(), c, table(), directions()));
}

void BM_AccuracyParallel(benchmark::State &state) {
  const auto c = campaign(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(run_accuracy(hosts(), c, table(), directions()));
}

void BM_Harvest(benchmark::State &state) {
  HarvestOptions o;
  o.threads = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(harvest_hosts({KnotLabel::parse("+3_1")}, 5, 100, 12, table(), o));
}

void BM_IdentifyOne(benchmark::State &state) {
  RngStream rng(13, 0);
  HomflyEngine engine;
  for (auto _ : state)
    benchmark::DoNotOptimize(identify(sample_closed_equilateral(100, rng), table(), rng, engine));
}

} // namespace

BENCHMARK(BM_AccuracySerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_AccuracyParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Harvest)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_IdentifyOne)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
