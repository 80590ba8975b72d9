#include <doctest.h>

#include <cmath>

#include "smell/network.hpp"

using namespace smell;

namespace {

// Scalar probe loss 0.5*||f(x)||^2 for finite-difference checks.
double probe_loss(const Mlp& net, const Matrix& x) {
  const Matrix y = forward(net, x);
  return 0.5 * y.squaredNorm();
}

double max_rel_err(double analytic, double numeric) {
  return std::abs(analytic - numeric) /
         std::max(std::abs(analytic) + std::abs(numeric), 1e-6);
}

} // namespace

TEST_CASE("init_params builds mirrored encoder/decoder with sane statistics") {
  const NetworkParams p = init_params(10, {32, 16}, 4, 11);
  REQUIRE(p.encoder.layers.size() == 3);
  REQUIRE(p.decoder.layers.size() == 3);
  CHECK(p.encoder.input_dim() == 10);
  CHECK(p.encoder.output_dim() == 4);
  CHECK(p.decoder.input_dim() == 4);
  CHECK(p.decoder.output_dim() == 10);
  CHECK(p.encoder.layers[1].weight.rows() == 32);
  CHECK(p.decoder.layers[0].weight.cols() == 16);

  // weights ~ N(0, 0.01), biases ~ N(0.5, 0.01)
  double wsum = 0.0, wcount = 0.0, bsum = 0.0, bcount = 0.0;
  for (const auto& l : p.encoder.layers) {
    wsum += l.weight.sum();
    wcount += static_cast<double>(l.weight.size());
    bsum += l.bias.sum();
    bcount += static_cast<double>(l.bias.size());
  }
  CHECK(std::abs(wsum / wcount) < 0.01);
  CHECK(bsum / bcount == doctest::Approx(0.5).epsilon(0.02));

  // deterministic in the seed
  const NetworkParams q = init_params(10, {32, 16}, 4, 11);
  CHECK(p.encoder.layers[0].weight == q.encoder.layers[0].weight);
}

TEST_CASE("forward applies ReLU on hidden layers only") {
  Mlp net;
  net.layers.resize(2);
  net.layers[0].weight = Matrix::Identity(2, 2);
  net.layers[0].bias = RowVector::Zero(2);
  net.layers[1].weight = Matrix::Identity(2, 2);
  net.layers[1].bias = RowVector::Zero(2);

  Matrix x(1, 2);
  x << -3.0, 2.0;
  const Matrix y = forward(net, x);
  CHECK(y(0, 0) == doctest::Approx(0.0)); // clipped by the hidden ReLU
  CHECK(y(0, 1) == doctest::Approx(2.0));

  // the output layer itself is linear: negative outputs survive
  net.layers[1].weight << -1.0, 0.0, 0.0, -1.0;
  const Matrix z = forward(net, x);
  CHECK(z(0, 1) == doctest::Approx(-2.0));
}

TEST_CASE("backward matches central finite differences on a 3-4-2 net") {
  const double h = 1e-5;
  int checked = 0;
  for (int trial = 0; trial < 5; ++trial) {
    NetworkParams p = init_params(3, {4}, 2, 100 + static_cast<std::uint64_t>(trial));
    Mlp& net = p.encoder;
    Rng rng(200 + static_cast<std::uint64_t>(trial));
    Matrix x(3, 3);
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
      for (Eigen::Index c = 0; c < x.cols(); ++c) x(r, c) = rng.normal(0.0, 1.0);
    }

    ForwardCache cache;
    const Matrix y = forward(net, x, &cache);
    MlpGrads grads = zero_grads(net);
    const Matrix d_x = backward(net, cache, y, grads); // dL/dy = y for probe loss

    for (std::size_t l = 0; l < net.layers.size(); ++l) {
      auto check_param = [&](double& ref, double analytic) {
        const double save = ref;
        ref = save + h;
        const double up = probe_loss(net, x);
        ref = save - h;
        const double down = probe_loss(net, x);
        ref = save;
        CHECK(max_rel_err(analytic, (up - down) / (2 * h)) < 1e-4);
        ++checked;
      };
      for (Eigen::Index r = 0; r < net.layers[l].weight.rows(); ++r) {
        for (Eigen::Index c = 0; c < net.layers[l].weight.cols(); ++c) {
          check_param(net.layers[l].weight(r, c), grads.d_weight[l](r, c));
        }
      }
      for (Eigen::Index c = 0; c < net.layers[l].bias.size(); ++c) {
        check_param(net.layers[l].bias(c), grads.d_bias[l](c));
      }
    }

    // input gradient too
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
      for (Eigen::Index c = 0; c < x.cols(); ++c) {
        const double save = x(r, c);
        x(r, c) = save + h;
        const double up = probe_loss(net, x);
        x(r, c) = save - h;
        const double down = probe_loss(net, x);
        x(r, c) = save;
        CHECK(max_rel_err(d_x(r, c), (up - down) / (2 * h)) < 1e-4);
      }
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("zero_grads and accumulate") {
  const NetworkParams p = init_params(3, {4}, 2, 1);
  MlpGrads a = zero_grads(p.encoder);
  CHECK(a.d_weight[0].isZero());
  MlpGrads b = zero_grads(p.encoder);
  b.d_weight[0].setOnes();
  accumulate(a, b, 0.5);
  CHECK(a.d_weight[0](0, 0) == doctest::Approx(0.5));
}
