#include <benchmark/benchmark.h>

#include "smell/network.hpp"
#include "smell/rng.hpp"

using namespace smell;

namespace {

Matrix random_batch(int rows, int cols, Rng& rng) {
  Matrix x(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) x(r, c) = rng.uniform();
  }
  return x;
}

void bench_encode(benchmark::State& state) {
  const int width = static_cast<int>(state.range(0));
  Rng rng(3);
  const NetworkParams params = init_params(16, {width}, 32, rng.raw());
  const Matrix x = random_batch(32, 16, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(encode(params, x));
  }
}

void bench_forward_backward(benchmark::State& state) {
  const int width = static_cast<int>(state.range(0));
  Rng rng(4);
  const NetworkParams params = init_params(16, {width}, 32, rng.raw());
  const Matrix x = random_batch(32, 16, rng);
  for (auto _ : state) {
    ForwardCache enc_cache, dec_cache;
    const Matrix z = encode(params, x, &enc_cache);
    const Matrix recon = decode(params, z, &dec_cache);
    const Matrix d_recon = recon - x;
    MlpGrads dec_grads, enc_grads;
    const Matrix d_z = backward(params.decoder, dec_cache, d_recon, dec_grads);
    backward(params.encoder, enc_cache, d_z, enc_grads);
    benchmark::DoNotOptimize(enc_grads);
  }
}

} // namespace

BENCHMARK(bench_encode)->Arg(64)->Arg(256)->Arg(1024);
BENCHMARK(bench_forward_backward)->Arg(64)->Arg(256)->Arg(1024);
