#include <benchmark/benchmark.h>

#include "smell/evaluation.hpp"
#include "smell/rng.hpp"

using namespace smell;

namespace {

void bench_knn_euclidean(benchmark::State& state) {
  const int rows = static_cast<int>(state.range(0));
  const int dim = 16;
  Rng rng(6);
  Matrix train(rows, dim);
  std::vector<int> labels(static_cast<std::size_t>(rows));
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < dim; ++c) train(r, c) = rng.normal(0.0, 1.0);
    labels[static_cast<std::size_t>(r)] = static_cast<int>(rng.uniform_int(3));
  }
  RowVector query(dim);
  for (int c = 0; c < dim; ++c) query(c) = rng.normal(0.0, 1.0);

  const DistanceFn metric = [](const RowVector& a, const RowVector& b) {
    return (a - b).norm();
  };
  for (auto _ : state) {
    benchmark::DoNotOptimize(knn_classify(train, labels, query, metric));
  }
}

} // namespace

BENCHMARK(bench_knn_euclidean)->Arg(100)->Arg(1000)->Arg(10000);
