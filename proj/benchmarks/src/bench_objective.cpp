#include <benchmark/benchmark.h>

#include "smell/objective.hpp"
#include "smell/rng.hpp"

using namespace smell;

namespace {

struct Fixture {
  NetworkParams params;
  MarkerSet markers;
  Matrix xi, xj;
  std::vector<char> similar;
  LossConstants constants;
};

Fixture make_fixture(int batch, int width, int latent) {
  Rng rng(5);
  Fixture f;
  f.params = init_params(16, {width}, latent, rng.raw());
  f.markers.positive.resize(3, latent);
  f.markers.negative.resize(2, latent);
  for (auto* g : {&f.markers.positive, &f.markers.negative}) {
    for (Eigen::Index r = 0; r < g->rows(); ++r) {
      for (int c = 0; c < latent; ++c) (*g)(r, c) = rng.normal(0.0, 1.0);
    }
  }
  f.xi.resize(batch, 16);
  f.xj.resize(batch, 16);
  f.similar.resize(static_cast<std::size_t>(batch));
  for (int r = 0; r < batch; ++r) {
    for (int c = 0; c < 16; ++c) {
      f.xi(r, c) = rng.uniform();
      f.xj(r, c) = rng.uniform();
    }
    f.similar[static_cast<std::size_t>(r)] = r % 2;
  }
  return f;
}

void bench_objective_value(benchmark::State& state) {
  const Fixture f = make_fixture(static_cast<int>(state.range(0)), 256, 32);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        objective_value(f.xi, f.xj, f.similar, f.params, f.markers, f.constants));
  }
}

void bench_objective_gradients(benchmark::State& state) {
  const Fixture f = make_fixture(static_cast<int>(state.range(0)), 256, 32);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        objective_gradients(f.xi, f.xj, f.similar, f.params, f.markers, f.constants));
  }
}

} // namespace

BENCHMARK(bench_objective_value)->Arg(8)->Arg(32)->Arg(128);
BENCHMARK(bench_objective_gradients)->Arg(8)->Arg(32)->Arg(128);
