#include "smell/network.hpp"

namespace smell {
namespace {

Mlp make_mlp(const std::vector<int>& dims, Rng& rng) {
  Mlp net;
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    Layer layer;
    layer.weight.resize(dims[l], dims[l + 1]);
    layer.bias.resize(dims[l + 1]);
    for (Eigen::Index r = 0; r < layer.weight.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) {
        layer.weight(r, c) = rng.normal(0.0, 0.01);
      }
    }
    for (Eigen::Index c = 0; c < layer.bias.size(); ++c) {
      layer.bias(c) = rng.normal(0.5, 0.01);
    }
    net.layers.push_back(std::move(layer));
  }
  return net;
}

} // namespace

NetworkParams init_params(int input_dim, const std::vector<int>& hidden, int latent_dim,
                          std::uint64_t seed) {
  if (input_dim < 1 || latent_dim < 1) throw UserError("network dimensions must be >= 1");
  Rng rng(seed);

  std::vector<int> enc_dims{input_dim};
  enc_dims.insert(enc_dims.end(), hidden.begin(), hidden.end());
  enc_dims.push_back(latent_dim);

  std::vector<int> dec_dims{latent_dim};
  dec_dims.insert(dec_dims.end(), hidden.rbegin(), hidden.rend());
  dec_dims.push_back(input_dim);

  NetworkParams p;
  p.encoder = make_mlp(enc_dims, rng);
  p.decoder = make_mlp(dec_dims, rng);
  return p;
}

Matrix forward(const Mlp& net, const Matrix& x, ForwardCache* cache) {
  if (x.cols() != net.input_dim()) {
    throw std::invalid_argument("forward: input width " + std::to_string(x.cols()) +
                                " does not match network input " +
                                std::to_string(net.input_dim()));
  }
  if (cache) {
    cache->input = x;
    cache->pre.clear();
    cache->post.clear();
  }
  Matrix a = x;
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    Matrix z = (a * net.layers[l].weight).rowwise() + net.layers[l].bias;
    if (cache) cache->pre.push_back(z);
    if (l + 1 < net.layers.size()) {
      a = z.cwiseMax(0.0); // ReLU on hidden layers only
    } else {
      a = std::move(z);
    }
    if (cache) cache->post.push_back(a);
  }
  return a;
}

Matrix backward(const Mlp& net, const ForwardCache& cache, const Matrix& grad_out,
                MlpGrads& grads) {
  if (cache.pre.size() != net.layers.size() || cache.input.cols() != net.input_dim() ||
      grad_out.rows() != cache.input.rows() || grad_out.cols() != net.output_dim()) {
    throw std::invalid_argument("backward: stale or mismatched forward cache");
  }
  grads.d_weight.resize(net.layers.size());
  grads.d_bias.resize(net.layers.size());

  Matrix delta = grad_out;
  for (std::size_t l = net.layers.size(); l-- > 0;) {
    if (l + 1 < net.layers.size()) {
      // ReLU mask of positive pre-activations
      delta = delta.cwiseProduct((cache.pre[l].array() > 0.0).cast<double>().matrix());
    }
    const Matrix& below = l == 0 ? cache.input : cache.post[l - 1];
    grads.d_weight[l] = below.transpose() * delta;
    grads.d_bias[l] = delta.colwise().sum();
    if (l > 0) delta = delta * net.layers[l].weight.transpose();
  }
  return delta * net.layers[0].weight.transpose();
}

Matrix encode(const NetworkParams& p, const Matrix& x, ForwardCache* cache) {
  return forward(p.encoder, x, cache);
}

Matrix decode(const NetworkParams& p, const Matrix& z, ForwardCache* cache) {
  return forward(p.decoder, z, cache);
}

MlpGrads zero_grads(const Mlp& net) {
  MlpGrads g;
  for (const auto& layer : net.layers) {
    g.d_weight.push_back(Matrix::Zero(layer.weight.rows(), layer.weight.cols()));
    g.d_bias.push_back(RowVector::Zero(layer.bias.size()));
  }
  return g;
}

void accumulate(MlpGrads& into, const MlpGrads& from, double scale) {
  for (std::size_t l = 0; l < into.d_weight.size(); ++l) {
    into.d_weight[l] += scale * from.d_weight[l];
    into.d_bias[l] += scale * from.d_bias[l];
  }
}

} // namespace smell
