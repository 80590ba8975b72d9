#include "smell/optimizer.hpp"

namespace smell {

void SgdMomentum::step(Matrix& param, const Matrix& grad) {
  if (!grad.allFinite()) {
    throw std::runtime_error("sgd_step: non-finite gradient");
  }
  auto [it, inserted] = velocity_.try_emplace(param.data());
  Matrix& v = it->second;
  if (inserted) v = Matrix::Zero(param.rows(), param.cols());
  v = momentum_ * v + grad;
  param -= lr_ * v;
}

void SgdMomentum::step(Mlp& net, const MlpGrads& grads) {
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    step(net.layers[l].weight, grads.d_weight[l]);

    if (!grads.d_bias[l].allFinite()) {
      throw std::runtime_error("sgd_step: non-finite bias gradient");
    }
    auto [it, inserted] = velocity_.try_emplace(net.layers[l].bias.data());
    Matrix& v = it->second;
    if (inserted) v = Matrix::Zero(1, net.layers[l].bias.size());
    v = momentum_ * v + grads.d_bias[l].matrix();
    net.layers[l].bias -= (lr_ * v).row(0);
  }
}

} // namespace smell
