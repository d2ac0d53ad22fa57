#include <benchmark/benchmark.h>

#include "gns/lasso.hpp"
#include "gns/problems.hpp"
#include "gns/solver_c11.hpp"

namespace {

gns::Vector vec2(double a, double b) {
  gns::Vector v(2);
  v << a, b;
  return v;
}

void BM_limiting_normal_cone(benchmark::State& state) {
  gns::C11Problem p = gns::klatte_kummer();
  gns::Vector zv(4);
  zv << 0, 0, 0, 0;
  for (auto _ : state) {
    gns::ConeUnion n = gns::limiting_normal_cone(*p.graph, zv);
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_limiting_normal_cone);

void BM_newton_c11_corner(benchmark::State& state) {
  gns::C11Problem p = gns::klatte_kummer();
  gns::SolverConfig cfg;
  for (auto _ : state) {
    gns::SolveTrace t = gns::newton_c11(p, vec2(0.05, 0.02), cfg);
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(BM_newton_c11_corner);

void BM_direction_set_kink(benchmark::State& state) {
  gns::C11Problem p = gns::abs_square_2d();
  gns::Vector z = vec2(0, 0.7);
  gns::Vector v = p.grad(z);
  for (auto _ : state) {
    gns::DirectionSet g = gns::direction_set(*p.graph, z, v);
    auto d = gns::select_direction(g, gns::SelectionRule::min_norm());
    benchmark::DoNotOptimize(d);
  }
}
BENCHMARK(BM_direction_set_kink);

void BM_lasso_solve_separable(benchmark::State& state) {
  gns::LassoInstance inst;
  inst.A = gns::Matrix::Zero(3, 3);
  inst.A.diagonal() << 2.0, 25.0, 7.0;
  inst.b.resize(3);
  inst.b << 1.0, 4.0, -5.0;
  inst.mu = 1.0 / 3.0;
  gns::Vector x0(3);
  x0 << -2.0, 0.0, 0.0;
  gns::ProxConfig cfg;
  for (auto _ : state) {
    gns::SolveTrace t = gns::lasso_solve(inst, x0, cfg);
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(BM_lasso_solve_separable);

}  // namespace

BENCHMARK_MAIN();
