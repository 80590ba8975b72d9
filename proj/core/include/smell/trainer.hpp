#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "smell/dataset.hpp"
#include "smell/objective.hpp"

namespace smell {

struct TrainConfig {
  double r_hc = 1.0;
  double r_d = 0.1;
  double r_r = 1e-3;
  double eps = 1e-3;
  int k_positive = 3;
  int k_negative = 2;
  int latent_dim = 64;
  std::vector<int> hidden = {512, 512, 2048};
  double learning_rate = 0.01;
  double momentum = 0.9;
  int batch_size = 32;
  int pretrain_epochs = 200;
  int joint_epochs = 500;
  std::uint64_t seed = 0;
  // After pretraining, rescale the encoder's linear output layer so sampled
  // s-vectors have mean norm ~1. The kernel bandwidth is fixed at 1; without
  // this, small encoders can leave all pairs inside a region the kernel
  // cannot resolve and marker initialization degenerates.
  bool calibrate_sspace = true;
  bool zero_r_r = false;
  bool zero_r_d = false;
  bool euclidean_eval = false;

  void validate() const;
  LossConstants constants() const;
};

struct StepLog {
  int step = 0;
  LossBreakdown loss;
};

struct TrainedModel {
  NetworkParams params;
  MarkerSet markers;
  TrainConfig config;
  std::vector<StepLog> log;
};

/// Minimize mean squared reconstruction on single examples; no pairs, no
/// markers. test_fold < 0 trains on every row.
NetworkParams pretrain_autoencoder(const Dataset& d, const FoldPlan& plan, int test_fold,
                                   const TrainConfig& config);

/// Full pipeline: pretrain, Lloyd marker init, joint loop.
TrainedModel train(const Dataset& d, const FoldPlan& plan, int test_fold,
                   const TrainConfig& config);

struct Proposition1Report {
  double min_pos_norm = 0.0; // squared norms
  double min_neg_norm = 0.0;
  bool holds = false;
};

/// Holds iff some positive marker has smaller squared norm than every
/// negative marker.
Proposition1Report proposition1_check(const TrainedModel& model);

} // namespace smell
