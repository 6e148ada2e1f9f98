#include <benchmark/benchmark.h>

#include <vector>

#include "vessel1d/fem.hpp"
#include "vessel1d/scenarios.hpp"
#include "vessel1d/tridiagonal.hpp"

namespace {

using namespace vessel1d;

TridiagonalSystem diagonally_dominant(std::size_t n) {
  TridiagonalSystem sys;
  sys.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    sys.sub[i] = -1.0;
    sys.diag[i] = 4.0 + 0.01 * static_cast<double>(i % 7);
    sys.sup[i] = -1.0;
    sys.rhs[i] = static_cast<double>(i % 13);
  }
  return sys;
}

void BM_SolveTridiagonal(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const TridiagonalSystem sys = diagonally_dominant(n);
  std::vector<double> scratch, out;
  for (auto _ : state) {
    solve_tridiagonal(sys, scratch, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SolveTridiagonal)->Arg(200)->Arg(1000)->Arg(2000);

void BM_AssembleStep(benchmark::State& state) {
  const Mesh mesh(static_cast<int>(state.range(0)));
  const ScenarioSpec& scenario = catalog_get("A1");
  std::vector<double> u(static_cast<std::size_t>(mesh.node_count()), 0.0);
  for (auto _ : state) {
    TridiagonalSystem sys = assemble_step(u, scenario, mesh, 1e-5, 1e-5);
    benchmark::DoNotOptimize(sys.rhs.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_AssembleStep)->Arg(200)->Arg(1000);

void BM_TimeStep(benchmark::State& state) {
  const Mesh mesh(static_cast<int>(state.range(0)));
  const ScenarioSpec& scenario = catalog_get("A1");
  FieldSnapshot snap = make_snapshot(
      0.0, std::vector<double>(static_cast<std::size_t>(mesh.node_count()), 0.0), mesh);
  for (auto _ : state) {
    FieldSnapshot next = step(snap, scenario, mesh, 1e-5);
    benchmark::DoNotOptimize(next.u.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TimeStep)->Arg(200)->Arg(1000);

void BM_EvalExpr(benchmark::State& state) {
  const Expr f = parse_expr("0.4999*cos(100*x)+0.5");
  double x = 0.0;
  for (auto _ : state) {
    x += 1e-6;
    benchmark::DoNotOptimize(f.eval(x, 0.0));
  }
}
BENCHMARK(BM_EvalExpr);

}  // namespace

BENCHMARK_MAIN();
