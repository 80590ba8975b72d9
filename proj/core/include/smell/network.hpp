#pragma once

#include <cstdint>
#include <vector>

#include "smell/rng.hpp"
#include "smell/types.hpp"

namespace smell {

struct Layer {
  Matrix weight; // in x out
  RowVector bias;
};

/// Fully connected net with ReLU on hidden layers and a linear output layer.
struct Mlp {
  std::vector<Layer> layers;

  Eigen::Index input_dim() const { return layers.front().weight.rows(); }
  Eigen::Index output_dim() const { return layers.back().weight.cols(); }
};

/// Cached pre-activations/activations from a forward pass, consumed by the
/// matching backward pass.
struct ForwardCache {
  Matrix input;
  std::vector<Matrix> pre;  // one per layer
  std::vector<Matrix> post; // ReLU outputs for hidden, identity for last
};

struct MlpGrads {
  std::vector<Matrix> d_weight;
  std::vector<RowVector> d_bias;
};

/// Encoder m -> hidden... -> n and mirrored decoder n -> reversed hidden -> m.
struct NetworkParams {
  Mlp encoder;
  Mlp decoder;
};

/// Weights ~ N(0, 0.01), biases ~ N(0.5, 0.01).
NetworkParams init_params(int input_dim, const std::vector<int>& hidden, int latent_dim,
                          std::uint64_t seed);

Matrix forward(const Mlp& net, const Matrix& x, ForwardCache* cache = nullptr);

/// Backprop through the net given the gradient at its output. Returns the
/// gradient with respect to the input; parameter gradients go to `grads`.
Matrix backward(const Mlp& net, const ForwardCache& cache, const Matrix& grad_out,
                MlpGrads& grads);

Matrix encode(const NetworkParams& p, const Matrix& x, ForwardCache* cache = nullptr);
Matrix decode(const NetworkParams& p, const Matrix& z, ForwardCache* cache = nullptr);

MlpGrads zero_grads(const Mlp& net);
void accumulate(MlpGrads& into, const MlpGrads& from, double scale = 1.0);

} // namespace smell
