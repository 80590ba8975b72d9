#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "smell/trainer.hpp"

namespace smell {

enum class MetricKind { smell, smell_euclidean, raw_euclidean };

std::string metric_name(MetricKind kind);

struct FoldResult {
  int fold = 0;
  double accuracy = 0.0;
  std::vector<std::vector<int>> confusion; // [true][predicted], classes 1..b
};

using DistanceFn = std::function<double(const RowVector&, const RowVector&)>;

/// Majority label among the 3 nearest neighbors; ties broken by smallest
/// summed distance, then lowest label index.
int knn_classify(const Matrix& train_rows, const std::vector<int>& train_labels,
                 const RowVector& query, const DistanceFn& metric, int k_neighbors = 3);

std::vector<FoldResult> cross_validate(const Dataset& d, const TrainConfig& config,
                                       MetricKind kind);

/// One trained model per fold can serve several metric kinds; this is the
/// shared implementation behind cross_validate and run_ablations.
std::vector<std::vector<FoldResult>> cross_validate_multi(const Dataset& d,
                                                          const TrainConfig& config,
                                                          const std::vector<MetricKind>& kinds);

struct MethodScores {
  std::string method;
  std::vector<double> fold_accuracies;
  double mean() const;
  double stddev() const;
};

/// Five variants: full, r_r=0, r_d=0, both zero, Euclidean-latent.
std::vector<MethodScores> run_ablations(const Dataset& d, const TrainConfig& base_config);

struct MethodAggregate {
  std::string method;
  double accuracy_avg = 0.0;
  double ranking_avg = 0.0;
  double diff_avg = 0.0;
  int firsts = 0;
};

struct BenchmarkSummary {
  std::vector<std::string> datasets;
  std::vector<MethodAggregate> methods;
};

/// `accuracies[dataset][method]` must be rectangular. Rank ties share the
/// minimum rank; ties count as a first for every tied method.
BenchmarkSummary aggregate(const std::vector<std::string>& dataset_names,
                           const std::vector<std::string>& method_names,
                           const std::vector<std::vector<double>>& accuracies);

} // namespace smell
