#include <benchmark/benchmark.h>

#include "d2d/experiments.hpp"
#include "d2d/rng.hpp"
#include "d2d/scheduler.hpp"
#include "d2d/units.hpp"

using namespace d2d;

namespace {

RealizationParts fixed_parts(int K, std::uint64_t seed) {
  SimConfig cfg;
  cfg.K = K;
  return run_pipeline(cfg, seed);
}

void BM_GenerateTopology(benchmark::State& state) {
  SimConfig cfg;
  cfg.K = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    CellTopology topo = generate_topology(cfg, seed++);
    benchmark::DoNotOptimize(topo);
  }
}
BENCHMARK(BM_GenerateTopology)->Arg(100)->Arg(300);

void BM_Classify(benchmark::State& state) {
  SimConfig cfg;
  cfg.K = static_cast<int>(state.range(0));
  CellTopology topo = generate_topology(cfg, 1);
  ZipfPmf pc = zipf_pmf(cfg.N_files, cfg.gamma_c);
  ZipfPmf pr = zipf_pmf(cfg.N_files, cfg.gamma_r);
  CacheState cache = place_and_request(topo, pc, pr, 2);
  for (auto _ : state) {
    Classification cls = classify(topo, cache, cfg.r);
    benchmark::DoNotOptimize(cls);
  }
}
BENCHMARK(BM_Classify)->Arg(100)->Arg(300);

void BM_ColorEdges(benchmark::State& state) {
  RealizationParts parts = fixed_parts(static_cast<int>(state.range(0)), 1);
  LinkGraph graph = build_graph(parts.cls.links);
  for (auto _ : state) {
    auto classes = color_edges(graph);
    benchmark::DoNotOptimize(classes);
  }
}
BENCHMARK(BM_ColorEdges)->Arg(100)->Arg(300);

void BM_CpcCheck(benchmark::State& state) {
  int k = static_cast<int>(state.range(0));
  Rng rng(7);
  std::vector<Point> pos;
  for (int i = 0; i < k; ++i) {
    Point tx{rng.uniform(0, 1000), rng.uniform(0, 1000)};
    pos.push_back(tx);
    pos.push_back({tx.x + rng.uniform(20, 120), tx.y});
  }
  CellTopology topo(pos, 0.125, 1e-14);
  std::vector<PotentialLink> links;
  std::vector<int> ids;
  for (int i = 0; i < k; ++i) {
    links.push_back({2 * i + 1, 2 * i, topo.gain(2 * i, 2 * i + 1)});
    ids.push_back(i);
  }
  SinrTargets t = uniform_targets(k, 1.0, 1.0);
  for (auto _ : state) {
    PowerSolveOutcome out = cpc_check(ids, links, topo, t, 0.1);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_CpcCheck)->Arg(2)->Arg(8)->Arg(16)->Arg(32);

void BM_Schedule(benchmark::State& state) {
  RealizationParts parts = fixed_parts(static_cast<int>(state.range(0)), 1);
  double p_max_w = dbm_to_watts(20.0);
  for (auto _ : state) {
    ScheduleResult res = schedule(parts.cls, parts.topo, parts.targets, p_max_w);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(BM_Schedule)->Arg(100)->Arg(300);

void BM_RunRealization(benchmark::State& state) {
  SimConfig cfg;
  cfg.K = static_cast<int>(state.range(0));
  std::uint64_t i = 0;
  for (auto _ : state) {
    ExperimentRecord rec = run_realization(cfg, sub_seed(1, i++));
    benchmark::DoNotOptimize(rec);
  }
}
BENCHMARK(BM_RunRealization)->Arg(100)->Arg(200)->Arg(300);

}  // namespace

BENCHMARK_MAIN();
