#include "smell/trainer.hpp"

#include <cmath>
#include <iostream>

#include "smell/optimizer.hpp"
#include "smell/pairs.hpp"

namespace smell {
namespace {

constexpr int kMarkerInitSamples = 2048;

std::vector<int> training_rows(const Dataset& d, const FoldPlan& plan, int test_fold) {
  std::vector<int> rows;
  for (int r = 0; r < d.rows(); ++r) {
    if (test_fold >= 0 && plan.fold_of_row[static_cast<std::size_t>(r)] == test_fold) continue;
    rows.push_back(r);
  }
  if (rows.empty()) throw UserError("training fold selection left no rows");
  return rows;
}

Matrix gather_rows(const Dataset& d, const std::vector<int>& rows) {
  Matrix x(static_cast<Eigen::Index>(rows.size()), d.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    x.row(static_cast<Eigen::Index>(r)) = d.features.row(rows[r]);
  }
  return x;
}

// Momentum at 0.9 can run away on narrow networks once a few batches point
// the same direction; capping the global gradient norm keeps every step
// bounded without changing well-behaved updates.
constexpr double kGradClipNorm = 1.0;

double squared_norm(const MlpGrads& g) {
  double s = 0.0;
  for (const auto& w : g.d_weight) s += w.squaredNorm();
  for (const auto& b : g.d_bias) s += b.squaredNorm();
  return s;
}

void clip_grads(MlpGrads& a, MlpGrads& b) {
  const double norm = std::sqrt(squared_norm(a) + squared_norm(b));
  if (norm <= kGradClipNorm) return;
  const double scale = kGradClipNorm / norm;
  for (auto* g : {&a, &b}) {
    for (auto& w : g->d_weight) w *= scale;
    for (auto& bias : g->d_bias) bias *= scale;
  }
}

// Recenter and rescale the encoder's linear output layer so that training-row
// latents have zero mean and a small fixed spread. The default init draws
// weights far smaller than the biases, which leaves the latents nearly
// constant; reconstruction then plateaus at the data variance because no
// gradient reaches the early layers. A modest spread (0.25) breaks that
// saddle without the violent first steps a larger spread causes.
void standardize_latents(const Dataset& d, const std::vector<int>& rows, NetworkParams& params) {
  constexpr double kInitLatentSpread = 0.25;
  const Matrix z = encode(params, gather_rows(d, rows));
  const Vector mu = z.colwise().mean();
  const double sd =
      std::sqrt((z.rowwise() - mu.transpose()).squaredNorm() / static_cast<double>(z.rows()));
  if (!(sd > 0.0)) return;
  const double scale = kInitLatentSpread / sd;
  Layer& out = params.encoder.layers.back();
  out.weight *= scale;
  out.bias = scale * (out.bias - mu.transpose());
}

void pretrain_epochs(const Dataset& d, const std::vector<int>& rows, const TrainConfig& config,
                     NetworkParams& params, Rng& rng) {
  SgdMomentum opt(config.learning_rate, config.momentum);

  std::vector<int> order = rows;
  for (int epoch = 0; epoch < config.pretrain_epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t start = 0; start < order.size();
         start += static_cast<std::size_t>(config.batch_size)) {
      const std::size_t end =
          std::min(order.size(), start + static_cast<std::size_t>(config.batch_size));
      const std::vector<int> batch(order.begin() + static_cast<long>(start),
                                   order.begin() + static_cast<long>(end));
      const Matrix x = gather_rows(d, batch);

      ForwardCache enc_cache, dec_cache;
      const Matrix z = encode(params, x, &enc_cache);
      const Matrix recon = decode(params, z, &dec_cache);

      const double mse = (x - recon).rowwise().squaredNorm().mean();
      if (!std::isfinite(mse)) {
        throw std::runtime_error("pretrain: non-finite reconstruction loss at epoch " +
                                 std::to_string(epoch));
      }

      const Matrix d_recon = -2.0 / static_cast<double>(x.rows()) * (x - recon);
      MlpGrads dec_grads, enc_grads;
      const Matrix d_z = backward(params.decoder, dec_cache, d_recon, dec_grads);
      backward(params.encoder, enc_cache, d_z, enc_grads);

      clip_grads(enc_grads, dec_grads);
      opt.step(params.encoder, enc_grads);
      opt.step(params.decoder, dec_grads);
    }
  }
}

NetworkParams pretrain_impl(const Dataset& d, const std::vector<int>& rows,
                            const TrainConfig& config, Rng& rng) {
  NetworkParams params = init_params(static_cast<int>(d.cols()), config.hidden,
                                     config.latent_dim, rng.raw());
  pretrain_epochs(d, rows, config, params, rng);
  return params;
}

// Scale the encoder's linear output layer so that s-vectors of sampled
// training pairs have mean norm ~1, matching the fixed kernel bandwidth.
void calibrate_sspace_scale(const Dataset& d, const FoldPlan& plan, int test_fold,
                            NetworkParams& params, Rng& rng) {
  constexpr int kSamplePairs = 256;
  double total = 0.0;
  int count = 0;
  for (int t = 0; t < kSamplePairs; ++t) {
    const PairBatch b = sample_pair_batch(d, plan, test_fold, 2, rng);
    for (const Pair& p : b.pairs) {
      Matrix x(2, d.cols());
      x.row(0) = d.features.row(p.i);
      x.row(1) = d.features.row(p.j);
      const Matrix z = encode(params, x);
      total += (z.row(0) - z.row(1)).norm();
      ++count;
    }
  }
  const double mean_norm = total / static_cast<double>(count);
  if (!(mean_norm > 0.0)) return; // fully collapsed encoder; nothing to scale
  const double scale = 1.0 / mean_norm;
  Layer& out = params.encoder.layers.back();
  out.weight *= scale;
  out.bias *= scale;
}

MarkerSet init_markers(const Dataset& d, const FoldPlan& plan, int test_fold,
                       const NetworkParams& params, const TrainConfig& config, Rng& rng) {
  const int n_each = kMarkerInitSamples;
  PairBatch sim, dis;
  for (int t = 0; t < n_each; ++t) {
    PairBatch b = sample_pair_batch(d, plan, test_fold, 2, rng);
    sim.pairs.push_back(b.pairs[0]);
    dis.pairs.push_back(b.pairs[1]);
  }
  auto svecs_of = [&](const PairBatch& batch) {
    Matrix xi(static_cast<Eigen::Index>(batch.pairs.size()), d.cols());
    Matrix xj(static_cast<Eigen::Index>(batch.pairs.size()), d.cols());
    for (std::size_t p = 0; p < batch.pairs.size(); ++p) {
      xi.row(static_cast<Eigen::Index>(p)) = d.features.row(batch.pairs[p].i);
      xj.row(static_cast<Eigen::Index>(p)) = d.features.row(batch.pairs[p].j);
    }
    return sspace_map(encode(params, xi), encode(params, xj));
  };
  return marker_init(svecs_of(sim), svecs_of(dis), config.k_positive, config.k_negative, rng);
}

} // namespace

void TrainConfig::validate() const {
  if (r_hc < 0 || r_d < 0 || r_r < 0 || eps <= 0) {
    throw UserError("calibration constants must be non-negative (eps > 0)");
  }
  if (k_positive < 1 || k_negative < 1) throw UserError("need at least one marker per group");
  if (latent_dim < 1 || batch_size < 2) throw UserError("latent_dim >= 1 and batch >= 2 required");
  if (batch_size % 2 != 0) {
    std::cerr << "warning: odd batch size " << batch_size
              << " gives unequal similar/dissimilar counts\n";
  }
}

LossConstants TrainConfig::constants() const {
  LossConstants c;
  c.r_hc = r_hc;
  c.r_r = zero_r_r ? 0.0 : r_r;
  c.r_d = zero_r_d ? 0.0 : r_d;
  c.eps = eps;
  return c;
}

NetworkParams pretrain_autoencoder(const Dataset& d, const FoldPlan& plan, int test_fold,
                                   const TrainConfig& config) {
  config.validate();
  Rng rng(config.seed);
  return pretrain_impl(d, training_rows(d, plan, test_fold), config, rng);
}

TrainedModel train(const Dataset& d, const FoldPlan& plan, int test_fold,
                   const TrainConfig& config) {
  config.validate();
  Rng rng(config.seed);
  const std::vector<int> rows = training_rows(d, plan, test_fold);

  TrainedModel model;
  model.config = config;
  model.params = init_params(static_cast<int>(d.cols()), config.hidden, config.latent_dim,
                             rng.raw());
  if (config.calibrate_sspace) standardize_latents(d, rows, model.params);
  pretrain_epochs(d, rows, config, model.params, rng);
  if (config.calibrate_sspace) {
    calibrate_sspace_scale(d, plan, test_fold, model.params, rng);
  }
  model.markers = init_markers(d, plan, test_fold, model.params, config, rng);

  const LossConstants constants = config.constants();
  SgdMomentum net_opt(config.learning_rate, config.momentum);
  SgdMomentum marker_opt(config.learning_rate, config.momentum);

  const auto steps_per_epoch = static_cast<int>(
      (rows.size() + static_cast<std::size_t>(config.batch_size) - 1) /
      static_cast<std::size_t>(config.batch_size));
  int step = 0;
  for (int epoch = 0; epoch < config.joint_epochs; ++epoch) {
    for (int s = 0; s < steps_per_epoch; ++s, ++step) {
      const PairBatch batch = sample_pair_batch(d, plan, test_fold, config.batch_size, rng);
      const auto g = static_cast<Eigen::Index>(batch.pairs.size());
      Matrix xi(g, d.cols()), xj(g, d.cols());
      std::vector<char> similar(batch.pairs.size());
      for (Eigen::Index p = 0; p < g; ++p) {
        xi.row(p) = d.features.row(batch.pairs[static_cast<std::size_t>(p)].i);
        xj.row(p) = d.features.row(batch.pairs[static_cast<std::size_t>(p)].j);
        similar[static_cast<std::size_t>(p)] =
            batch.pairs[static_cast<std::size_t>(p)].similar ? 1 : 0;
      }

      StepGradients grads =
          objective_gradients(xi, xj, similar, model.params, model.markers, constants);
      if (!std::isfinite(grads.loss.total)) {
        throw std::runtime_error("train: non-finite loss at step " + std::to_string(step));
      }

      clip_grads(grads.encoder, grads.decoder);
      const double marker_norm = std::sqrt(grads.markers.positive.squaredNorm() +
                                           grads.markers.negative.squaredNorm());
      if (marker_norm > kGradClipNorm) {
        grads.markers.positive *= kGradClipNorm / marker_norm;
        grads.markers.negative *= kGradClipNorm / marker_norm;
      }

      // synchronous update: all gradients were taken from the same snapshot
      marker_opt.step(model.markers.positive, grads.markers.positive);
      marker_opt.step(model.markers.negative, grads.markers.negative);
      net_opt.step(model.params.encoder, grads.encoder);
      net_opt.step(model.params.decoder, grads.decoder);

      model.log.push_back({step, grads.loss});
    }
  }
  return model;
}

Proposition1Report proposition1_check(const TrainedModel& model) {
  Proposition1Report rep;
  rep.min_pos_norm = model.markers.positive.rowwise().squaredNorm().minCoeff();
  rep.min_neg_norm = model.markers.negative.rowwise().squaredNorm().minCoeff();
  rep.holds = rep.min_pos_norm < rep.min_neg_norm;
  return rep;
}

} // namespace smell
