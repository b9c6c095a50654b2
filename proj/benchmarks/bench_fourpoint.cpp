#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "treefree/embedding.hpp"
#include "treefree/metric.hpp"

using namespace treefree;

namespace {

FiniteMetric tree_metric(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> vertices;
  for (std::size_t i = 0; i < n; ++i) vertices.push_back("v" + std::to_string(i));
  std::vector<WeightedTree::Edge> edges;
  for (std::size_t i = 1; i < n; ++i)
    edges.push_back({vertices[rng() % i], vertices[i],
                     Scalar::rational(static_cast<long>(rng() % 12 + 1), 4)});
  return WeightedTree::build(vertices[0], vertices, edges).induced_metric();
}

FiniteMetric euclidean_metric(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < n; ++i)
    pts.emplace_back(double(rng() % 10000) / 100.0, double(rng() % 10000) / 100.0);
  std::vector<std::string> labels;
  std::vector<std::vector<Scalar>> d(n, std::vector<Scalar>(n));
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back("p" + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) {
      double dx = pts[i].first - pts[j].first, dy = pts[i].second - pts[j].second;
      d[i][j] = Scalar::floating(std::sqrt(dx * dx + dy * dy));
    }
  }
  return FiniteMetric::validate(labels, d, 0, {.merge_duplicates = true}).metric;
}

void BM_fourpoint_tree(benchmark::State& state) {
  FiniteMetric m = tree_metric(static_cast<std::size_t>(state.range(0)), 7);
  unsigned threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(four_point_check(m, threads).holds);
}
BENCHMARK(BM_fourpoint_tree)->Args({40, 1})->Args({40, 4})->Args({80, 1})->Args({80, 4});

void BM_fourpoint_euclidean(benchmark::State& state) {
  FiniteMetric m = euclidean_metric(static_cast<std::size_t>(state.range(0)), 11);
  for (auto _ : state) benchmark::DoNotOptimize(four_point_check(m).holds);
}
BENCHMARK(BM_fourpoint_euclidean)->Arg(20)->Arg(40);

void BM_build_tree(benchmark::State& state) {
  FiniteMetric m = tree_metric(static_cast<std::size_t>(state.range(0)), 13);
  for (auto _ : state) benchmark::DoNotOptimize(build_tree(m).tree.vertex_count());
}
BENCHMARK(BM_build_tree)->Arg(10)->Arg(20)->Arg(40);

}  // namespace

BENCHMARK_MAIN();
