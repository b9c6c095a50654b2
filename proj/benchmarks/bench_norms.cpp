#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "treefree/embedding.hpp"
#include "treefree/norms.hpp"

using namespace treefree;

namespace {

struct Instance {
  FiniteMetric metric;
  Molecule molecule;
  TreeRealization realization;
};

Instance make_instance(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> vertices;
  for (std::size_t i = 0; i < n; ++i) vertices.push_back("v" + std::to_string(i));
  std::vector<WeightedTree::Edge> edges;
  for (std::size_t i = 1; i < n; ++i)
    edges.push_back({vertices[rng() % i], vertices[i],
                     Scalar::rational(static_cast<long>(rng() % 12 + 1), 4)});
  WeightedTree t = WeightedTree::build(vertices[0], vertices, edges);
  FiniteMetric m = t.induced_metric();
  std::map<std::size_t, Scalar> coeffs;
  for (std::size_t p = 1; p < n; ++p)
    if (rng() & 1) coeffs[p] = Scalar::rational(static_cast<long>(rng() % 13) - 6, 3);
  Molecule mu(m, coeffs);
  return {m, mu, build_tree(m)};
}

void BM_lp_norm(benchmark::State& state) {
  Instance in = make_instance(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(lp_norm(in.metric, in.molecule).value);
}
BENCHMARK(BM_lp_norm)->Arg(6)->Arg(12)->Arg(20);

void BM_flow_norm(benchmark::State& state) {
  Instance in = make_instance(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(flow_norm(in.metric, in.molecule).value);
}
BENCHMARK(BM_flow_norm)->Arg(6)->Arg(12)->Arg(20);

void BM_cut_norm(benchmark::State& state) {
  Instance in = make_instance(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(cut_norm(in.realization, in.molecule).value);
}
BENCHMARK(BM_cut_norm)->Arg(6)->Arg(12)->Arg(20);

}  // namespace
