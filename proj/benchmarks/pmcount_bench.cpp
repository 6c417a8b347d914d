#include <benchmark/benchmark.h>

#include "pmcount/decomposition.hpp"
#include "pmcount/engine.hpp"
#include "pmcount/oracle.hpp"
#include "pmcount/pfaffian.hpp"

namespace {

using namespace pmcount;

WeightedMultigraph even_cliquesum(std::size_t n, std::uint64_t seed) {
  CliqueSumOptions o;
  o.pieces = 0;
  o.max_vertices = n;
  o.min_piece_vertices = 4;
  o.max_piece_vertices = 8;
  auto g = gen_cliquesum(o, seed).graph;
  if (g.vertex_count() % 2 == 1) {
    const VertexId extra = g.max_vertex_id() + 1;
    g.add_vertex(extra);
    g.add_edge(g.vertices().front(), extra, 1);
  }
  return g;
}

void BM_GridPfaffian(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const auto g = gen_grid(side, side);
  for (auto _ : state) benchmark::DoNotOptimize(perfmatch_planar(g));
  state.SetComplexityN(static_cast<benchmark::IterationCount>(side * side));
}
BENCHMARK(BM_GridPfaffian)->DenseRange(4, 20, 4)->Unit(benchmark::kMillisecond)->Complexity();

void BM_RandomPlanar(benchmark::State& state) {
  const auto g = gen_planar(static_cast<std::size_t>(state.range(0)), 0.9, {}, 1);
  for (auto _ : state) benchmark::DoNotOptimize(perfmatch_planar(g));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RandomPlanar)->RangeMultiplier(2)->Range(32, 512)->Unit(benchmark::kMillisecond)->Complexity();

void BM_DecomposeK33Free(benchmark::State& state) {
  const auto g = even_cliquesum(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(decompose_k33free(g));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DecomposeK33Free)->RangeMultiplier(4)->Range(1 << 10, 1 << 14)->Unit(benchmark::kMillisecond)->Complexity();

void BM_K33Pipeline(benchmark::State& state) {
  const auto g = even_cliquesum(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(count_perfmatch(g, Mode::K33));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_K33Pipeline)->RangeMultiplier(4)->Range(1 << 10, 1 << 14)->Unit(benchmark::kMillisecond)->Complexity();

void BM_BruteForce(benchmark::State& state) {
  const auto g = gen_planar(static_cast<std::size_t>(state.range(0)), 0.9, {}, 2);
  for (auto _ : state) benchmark::DoNotOptimize(brute_perfmatch(g));
}
BENCHMARK(BM_BruteForce)->DenseRange(10, 26, 4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
