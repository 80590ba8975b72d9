#include <benchmark/benchmark.h>

#include "smell/rng.hpp"
#include "smell/sspace.hpp"

using namespace smell;

namespace {

MarkerSet random_markers(int k_pos, int k_neg, int dim, Rng& rng) {
  MarkerSet m;
  m.positive.resize(k_pos, dim);
  m.negative.resize(k_neg, dim);
  for (auto* g : {&m.positive, &m.negative}) {
    for (Eigen::Index r = 0; r < g->rows(); ++r) {
      for (int c = 0; c < dim; ++c) (*g)(r, c) = rng.normal(0.0, 1.0);
    }
  }
  return m;
}

void bench_student_t_scores(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  Rng rng(1);
  const MarkerSet m = random_markers(3, 2, dim, rng);
  Vector s(dim);
  for (int c = 0; c < dim; ++c) s(c) = std::abs(rng.normal(0.0, 1.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(student_t_scores(s, m));
  }
}

void bench_latent_q_minus(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  Rng rng(2);
  const MarkerSet m = random_markers(3, 2, dim, rng);
  RowVector a(dim), b(dim);
  for (int c = 0; c < dim; ++c) {
    a(c) = rng.normal(0.0, 1.0);
    b(c) = rng.normal(0.0, 1.0);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(latent_q_minus(a, b, m));
  }
}

} // namespace

BENCHMARK(bench_student_t_scores)->Arg(16)->Arg(64)->Arg(256);
BENCHMARK(bench_latent_q_minus)->Arg(16)->Arg(64)->Arg(256);

BENCHMARK_MAIN();
