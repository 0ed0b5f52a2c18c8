#include <benchmark/benchmark.h>

#include <random>

#include "coarse/coarse.hpp"

using namespace coarse;

namespace {

CMatrix gaussian(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  CMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

ModuleOperator path_operator(int n, int mult, std::uint64_t seed) {
  auto m = share(GeometricModule::uniform(share(gen(SpaceKind::path, {n})), mult));
  return ModuleOperator(gaussian(m->dim(), m->dim(), seed), m, m);
}

void BM_OpNorm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const CMatrix m = gaussian(n, n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(op_norm(m).value);
}
BENCHMARK(BM_OpNorm)->Arg(8)->Arg(32)->Arg(64)->Arg(128)->Arg(256);

void BM_QlExact(benchmark::State& state) {
  const auto t = path_operator(static_cast<int>(state.range(0)), 1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(ql_value(t, 2.0, QlMode::exact).value);
}
BENCHMARK(BM_QlExact)->Arg(8)->Arg(12)->Arg(16);

void BM_QlBounds(benchmark::State& state) {
  const auto t = path_operator(static_cast<int>(state.range(0)), 1, 3);
  for (auto _ : state) benchmark::DoNotOptimize(ql_value(t, 2.0, QlMode::bounds).upper);
}
BENCHMARK(BM_QlBounds)->Arg(16)->Arg(32)->Arg(64);

void BM_App(benchmark::State& state) {
  const auto t = path_operator(static_cast<int>(state.range(0)), 1, 4);
  for (auto _ : state) benchmark::DoNotOptimize(app_value(t, 1.0, {200, 1e-9}).value);
}
BENCHMARK(BM_App)->Arg(8)->Arg(12)->Arg(24);

void BM_ApproxRelation(benchmark::State& state) {
  const auto t = path_operator(10, 1, 5);
  const auto mode = static_cast<BoundedMode>(state.range(0));
  const ApproxParams params{0.5 * t.norm(), 2.0, 2.0, mode};
  for (auto _ : state) benchmark::DoNotOptimize(approx_relation(t, params).pairs().size());
  state.SetLabel(to_string(mode));
}
BENCHMARK(BM_ApproxRelation)
    ->Arg(static_cast<int>(BoundedMode::balls))
    ->Arg(static_cast<int>(BoundedMode::maximal_cliques))
    ->Arg(static_cast<int>(BoundedMode::all_subsets));

void BM_CoveringIsometry(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto src = share(gen(SpaceKind::path, {2 * n}));
  auto tgt = share(gen(SpaceKind::path, {n}));
  std::vector<int> half(2 * n);
  for (int i = 0; i < 2 * n; ++i) half[i] = i / 2;
  const auto f = CoarseMapRep::from_function(src, tgt, half);
  auto ms = share(GeometricModule::uniform(src, 1));
  auto mt = share(GeometricModule::uniform(tgt, 2));
  for (auto _ : state) benchmark::DoNotOptimize(build_covering_isometry(f, ms, mt).spill);
}
BENCHMARK(BM_CoveringIsometry)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
