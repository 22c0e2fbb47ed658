#include <benchmark/benchmark.h>

#include <random>

#include "confopt/geometry.hpp"
#include "confopt/initializers.hpp"
#include "confopt/optimize.hpp"

using namespace confopt;

namespace {

Instance random_instance(std::size_t segments, std::int64_t box, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> c(0, box);
  Instance inst;
  for (std::size_t t = 0; t < segments; ++t) {
    Point a{c(rng), c(rng)}, b{c(rng), c(rng)};
    while (a == b) b = {c(rng), c(rng)};
    // short segments, like the challenge instances
    b = {a.x + (b.x - a.x) / 8, a.y + (b.y - a.y) / 8};
    if (a == b) b.x += 1;
    inst.points.push_back(a);
    inst.points.push_back(b);
    inst.segments.emplace_back(2 * t, 2 * t + 1);
  }
  return inst;
}

Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (coin(rng)) e.emplace_back(u, v);
    }
  }
  return build_graph(n, e);
}

void BM_ConflictGraph(benchmark::State& state, ConflictGraphMethod method) {
  const Instance inst = random_instance(static_cast<std::size_t>(state.range(0)), 100000, 1);
  for (auto _ : state) benchmark::DoNotOptimize(build_conflict_graph(inst, method, 1));
  state.SetComplexityN(state.range(0));
}
BENCHMARK_CAPTURE(BM_ConflictGraph, grid, ConflictGraphMethod::grid)->RangeMultiplier(4)->Range(256, 16384);
BENCHMARK_CAPTURE(BM_ConflictGraph, naive, ConflictGraphMethod::naive)->RangeMultiplier(4)->Range(256, 4096);

void BM_Dsatur(benchmark::State& state) {
  const Graph g = random_graph(static_cast<std::size_t>(state.range(0)), 0.1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(dsatur(g));
}
BENCHMARK(BM_Dsatur)->Arg(500)->Arg(2000);

void BM_Rlf(benchmark::State& state) {
  const Graph g = random_graph(static_cast<std::size_t>(state.range(0)), 0.1, 3);
  for (auto _ : state) benchmark::DoNotOptimize(rlf(g));
}
BENCHMARK(BM_Rlf)->Arg(500)->Arg(2000);

void BM_Optimizer(benchmark::State& state, Preset preset) {
  const Graph g = random_graph(500, 0.5, 4);
  const Coloring start = dsatur(g);
  const auto iterations = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    const auto r = optimize(g, start, preset_config(preset), Budget{std::nullopt, iterations});
    benchmark::DoNotOptimize(r.best.num_colors);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK_CAPTURE(BM_Optimizer, shadoks, Preset::shadoks)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Optimizer, gitastrophe, Preset::gitastrophe)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Optimizer, lasa_cwls, Preset::lasa_cwls)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
