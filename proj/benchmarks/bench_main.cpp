#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "banachlab/cantor.hpp"
#include "banachlab/index_search.hpp"
#include "banachlab/numrange.hpp"
#include "banachlab/operators.hpp"
#include "banachlab/rng.hpp"
#include "banachlab/space.hpp"
#include "banachlab/structure.hpp"

using namespace banachlab;

namespace {

Space hexagon() {
  Eigen::MatrixXd v(2, 3);
  v << 1.0, 0.5, -0.5, 0.0, std::sqrt(3.0) / 2.0, std::sqrt(3.0) / 2.0;
  return polyhedral_space(v);
}

void bm_polyhedral_norm(benchmark::State& state) {
  Space s = hexagon();
  std::mt19937_64 rng(1);
  std::vector<Eigen::VectorXd> xs;
  for (int i = 0; i < 64; ++i) xs.push_back(random_vector(rng, 2));
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(space_norm(s, xs[i++ % xs.size()]));
  }
}
BENCHMARK(bm_polyhedral_norm);

void bm_sup_re_closed_form(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Space s = lp_space(Field::Real, 1.0, n);
  std::mt19937_64 rng(2);
  Operator T(s, s, random_matrix(rng, n, n));
  for (auto _ : state) benchmark::DoNotOptimize(sup_re_range(T));
}
BENCHMARK(bm_sup_re_closed_form)->Arg(4)->Arg(16)->Arg(64);

void bm_hilbert_radius(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Space s = lp_space(Field::Real, 2.0, n);
  std::mt19937_64 rng(3);
  Operator T(s, s, random_matrix(rng, n, n));
  for (auto _ : state) benchmark::DoNotOptimize(numerical_radius(T));
}
BENCHMARK(bm_hilbert_radius)->Arg(4)->Arg(16)->Arg(64);

void bm_expm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(4);
  Eigen::MatrixXd A = random_matrix(rng, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(expm(A));
}
BENCHMARK(bm_expm)->Arg(4)->Arg(16)->Arg(64);

void bm_exp_formula(benchmark::State& state) {
  Space s = lp_space(Field::Real, lp_infinity(), 3);
  std::mt19937_64 rng(5);
  Operator T(s, s, random_matrix(rng, 3, 3));
  for (auto _ : state) benchmark::DoNotOptimize(exp_formula(T));
}
BENCHMARK(bm_exp_formula);

void bm_xe_norm(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  PLSpace pl = build_XE(EKind::L2, 1, m);
  std::mt19937_64 rng(6);
  std::vector<Eigen::VectorXd> xs;
  for (int i = 0; i < 32; ++i)
    xs.push_back(random_vector(rng, pl.space.dim()));
  size_t i = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(space_norm(pl.space, xs[i++ % xs.size()]));
}
BENCHMARK(bm_xe_norm)->Arg(27)->Arg(81)->Arg(243);

void bm_index_certified(benchmark::State& state) {
  Space s = hexagon();
  for (auto _ : state)
    benchmark::DoNotOptimize(numerical_index_estimate(s).upper);
}
BENCHMARK(bm_index_certified);

}  // namespace

BENCHMARK_MAIN();
