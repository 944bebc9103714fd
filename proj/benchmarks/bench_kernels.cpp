// Serial reference vs OpenMP production kernels.
#include <benchmark/benchmark.h>

#include <random>

#include "xpz/dirichlet.hpp"
#include "xpz/oracle.hpp"

using namespace xpz;

namespace {

ExpPoly dense_poly(unsigned seed, int terms) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::uniform_int_distribution<long long> num(1, 128);
  std::uniform_int_distribution<long long> den(1, 16);
  ExpPoly p;
  for (int i = 0; i < terms; ++i) {
    p.add_term(Rational::of(num(rng), den(rng)), cplx(coeff(rng), coeff(rng)));
  }
  return p;
}

void bm_star_reference(benchmark::State& state) {
  const ExpPoly f = dense_poly(1, static_cast<int>(state.range(0)));
  const ExpPoly g = dense_poly(2, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ref::star_product(f, g));
  }
}
BENCHMARK(bm_star_reference)->Arg(128)->Arg(512);

void bm_star_parallel(benchmark::State& state) {
  const ExpPoly f = dense_poly(1, static_cast<int>(state.range(0)));
  const ExpPoly g = dense_poly(2, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(star_product(f, g));
  }
}
BENCHMARK(bm_star_parallel)->Arg(128)->Arg(512)->Arg(2048);

void bm_star_square(benchmark::State& state) {
  const ExpPoly f = dense_poly(3, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(star_square(f));
  }
}
BENCHMARK(bm_star_square)->Arg(512)->Arg(2048);

void bm_matrix_reference(benchmark::State& state) {
  GridSpec grid{65536.0, static_cast<int>(state.range(0))};
  const auto a = PotentialSpec::step(1.0, Rational(2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ref::build_matrix(grid, &a, nullptr));
  }
}
BENCHMARK(bm_matrix_reference)->Arg(1000)->Arg(2000);

void bm_matrix_parallel(benchmark::State& state) {
  GridSpec grid{65536.0, static_cast<int>(state.range(0))};
  const auto a = PotentialSpec::step(1.0, Rational(2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_matrix(grid, &a, nullptr));
  }
}
BENCHMARK(bm_matrix_parallel)->Arg(1000)->Arg(2000);

void bm_eval_grid(benchmark::State& state) {
  const ExpPoly p = dense_poly(4, 2000);
  const auto grid = linspace(0.0, 50.0, 2048);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_grid(p, grid));
  }
}
BENCHMARK(bm_eval_grid);

}  // namespace

BENCHMARK_MAIN();
