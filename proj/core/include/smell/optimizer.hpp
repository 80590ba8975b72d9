#pragma once

#include <map>
#include <vector>

#include "smell/network.hpp"
#include "smell/types.hpp"

namespace smell {

/// Classical SGD with momentum: v <- momentum*v + grad; p <- p - lr*v.
/// Velocity buffers are keyed by parameter storage and sized on first use.
class SgdMomentum {
public:
  SgdMomentum(double learning_rate = 0.01, double momentum = 0.9)
      : lr_(learning_rate), momentum_(momentum) {}

  /// Throws on NaN/Inf gradients.
  void step(Mlp& net, const MlpGrads& grads);
  void step(Matrix& param, const Matrix& grad);

  double learning_rate() const { return lr_; }
  double momentum() const { return momentum_; }

private:
  double lr_;
  double momentum_;
  std::map<const void*, Matrix> velocity_;
};

} // namespace smell
