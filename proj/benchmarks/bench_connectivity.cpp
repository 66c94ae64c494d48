#include <benchmark/benchmark.h>

#include <random>

#include "mconn/classification.hpp"
#include "mconn/connectivity.hpp"
#include "mconn/experiments.hpp"
#include "mconn/graphic_matroid.hpp"
#include "mconn/linear_matroid.hpp"

using namespace mconn;

namespace {

OraclePtr random_graphic(std::uint64_t seed, int edges) {
  std::mt19937_64 rng(seed);
  const int vertices = std::max(3, edges / 2);
  std::vector<GraphicMatroid::Edge> list;
  for (int v = 1; v < vertices; ++v) {
    std::uniform_int_distribution<int> parent(0, v - 1);
    list.emplace_back(parent(rng), v);
  }
  std::uniform_int_distribution<int> any(0, vertices - 1);
  while (static_cast<int>(list.size()) < edges) {
    const int u = any(rng), v = any(rng);
    if (u != v) list.emplace_back(u, v);
  }
  return std::make_shared<GraphicMatroid>(vertices, std::move(list));
}

OraclePtr random_gf2(std::uint64_t seed, int columns) {
  std::mt19937_64 rng(seed);
  const int rows = columns / 2;
  std::bernoulli_distribution bit(0.5);
  std::vector<std::vector<int>> matrix(
      static_cast<std::size_t>(rows),
      std::vector<int>(static_cast<std::size_t>(columns)));
  for (auto& row : matrix) {
    for (auto& cell : row) cell = bit(rng) ? 1 : 0;
  }
  return std::make_shared<LinearMatroid>(2, std::move(matrix));
}

}  // namespace

static void BM_GraphicRankPerCall(benchmark::State& state) {
  const auto m = random_graphic(1, static_cast<int>(state.range(0)));
  std::mt19937_64 rng(2);
  for (auto _ : state) {
    const Subset x(static_cast<std::uint32_t>(rng()) &
                   m->full_set().bits());
    benchmark::DoNotOptimize(m->clone_fresh()->rank(x));
  }
}
BENCHMARK(BM_GraphicRankPerCall)->Arg(16)->Arg(28);

static void BM_Gf2Rank(benchmark::State& state) {
  const auto m = random_gf2(3, static_cast<int>(state.range(0)));
  std::mt19937_64 rng(4);
  for (auto _ : state) {
    const Subset x(static_cast<std::uint32_t>(rng()) & m->full_set().bits());
    benchmark::DoNotOptimize(m->clone_fresh()->rank(x));
  }
}
BENCHMARK(BM_Gf2Rank)->Arg(16)->Arg(28);

static void BM_KappaGraphicSingletons(benchmark::State& state) {
  const int edges = static_cast<int>(state.range(0));
  const auto m = random_graphic(5, edges);
  for (auto _ : state) {
    const auto fresh = m->clone_fresh();
    benchmark::DoNotOptimize(
        kappa(*fresh, Subset::single(0), Subset::single(1)));
  }
}
BENCHMARK(BM_KappaGraphicSingletons)->Arg(16)->Arg(22)->Arg(28);

static void BM_KappaGf2Singletons(benchmark::State& state) {
  const int columns = static_cast<int>(state.range(0));
  const auto m = random_gf2(6, columns);
  for (auto _ : state) {
    const auto fresh = m->clone_fresh();
    benchmark::DoNotOptimize(
        kappa(*fresh, Subset::single(0), Subset::single(1)));
  }
}
BENCHMARK(BM_KappaGf2Singletons)->Arg(14)->Arg(18);

static void BM_GridExtremalCheck(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const int l = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_extremal_check(k, l));
  }
}
BENCHMARK(BM_GridExtremalCheck)->Args({2, 2})->Args({2, 3})->Args({3, 3});

static void BM_ClassifyAllCycle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<GraphicMatroid::Edge> edges;
  for (int v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  const auto m = std::make_shared<GraphicMatroid>(n, edges);
  const Subset q = Subset::single(0), r = Subset::single(n / 2);
  const Subset free = (q | r).complement(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(classify_all(m->clone_fresh(), q, r, free));
  }
}
BENCHMARK(BM_ClassifyAllCycle)->Arg(8)->Arg(12);

BENCHMARK_MAIN();
