// Micro-benchmarks for the hot paths of a verification run: full point
// geometry from metric jets, the bivector curvature operator with its
// Lie-algebra square, and the stencil harvest behind the elliptic equations.

#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "solgeo/bivector.hpp"
#include "solgeo/geometry.hpp"
#include "solgeo/models.hpp"

namespace {

solgeo::SolitonInstance bench_instance(int n) {
  return n == 4 ? solgeo::einstein_product(2, 2) : solgeo::round_sphere(n);
}

Eigen::VectorXd bench_point(int n) {
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x[i] = 0.11 + 0.07 * i;
  return x;
}

void BM_point_geometry(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const solgeo::SolitonInstance inst = bench_instance(n);
  const Eigen::VectorXd x = bench_point(n);
  for (auto _ : state) {
    solgeo::PointGeometry P = solgeo::point_geometry(inst.family, x);
    benchmark::DoNotOptimize(P.scal);
  }
}
BENCHMARK(BM_point_geometry)->Arg(2)->Arg(3)->Arg(4);

void BM_curvature_operator_sharp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const solgeo::SolitonInstance inst = bench_instance(n);
  const solgeo::PointGeometry P = solgeo::point_geometry(inst.family, bench_point(n));
  const solgeo::TensorField R_f = solgeo::frame_components(P.riemann, P.frame);
  for (auto _ : state) {
    Eigen::MatrixXd M = solgeo::curvature_operator(R_f);
    Eigen::MatrixXd S = solgeo::sharp_operator(M);
    benchmark::DoNotOptimize(S(0, 0));
  }
}
BENCHMARK(BM_curvature_operator_sharp)->Arg(3)->Arg(4);

void BM_elliptic_terms(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const solgeo::SolitonInstance inst = bench_instance(n);
  const Eigen::VectorXd x = bench_point(n);
  const solgeo::PointGeometry P = solgeo::point_geometry(inst.family, x);
  for (auto _ : state) {
    solgeo::EllipticTerms terms = solgeo::elliptic_terms(inst.family, P);
    benchmark::DoNotOptimize(terms.lap_f_scal);
  }
}
BENCHMARK(BM_elliptic_terms)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
