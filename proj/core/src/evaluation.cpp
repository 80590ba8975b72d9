#include "smell/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace smell {

std::string metric_name(MetricKind kind) {
  switch (kind) {
    case MetricKind::smell: return "smell";
    case MetricKind::smell_euclidean: return "smell_euclidean";
    case MetricKind::raw_euclidean: return "raw_euclidean";
  }
  return "?";
}

int knn_classify(const Matrix& train_rows, const std::vector<int>& train_labels,
                 const RowVector& query, const DistanceFn& metric, int k_neighbors) {
  const auto n = static_cast<int>(train_rows.rows());
  if (n < k_neighbors) throw std::invalid_argument("knn_classify: too few training rows");

  std::vector<std::pair<double, int>> dist(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    dist[static_cast<std::size_t>(i)] = {metric(train_rows.row(i), query), i};
  }
  std::partial_sort(dist.begin(), dist.begin() + k_neighbors, dist.end());

  std::map<int, std::pair<int, double>> votes; // label -> (count, summed distance)
  for (int t = 0; t < k_neighbors; ++t) {
    auto& v = votes[train_labels[static_cast<std::size_t>(dist[static_cast<std::size_t>(t)].second)]];
    v.first += 1;
    v.second += dist[static_cast<std::size_t>(t)].first;
  }

  int best_label = 0;
  int best_count = -1;
  double best_sum = std::numeric_limits<double>::infinity();
  for (const auto& [label, v] : votes) { // map order = ascending label
    if (v.first > best_count ||
        (v.first == best_count && v.second < best_sum)) {
      best_label = label;
      best_count = v.first;
      best_sum = v.second;
    }
  }
  return best_label;
}

namespace {

FoldResult score_fold(const Dataset& d, const FoldPlan& plan, int fold,
                      const Matrix& space, const DistanceFn& metric) {
  std::vector<int> train_idx, test_idx;
  for (int r = 0; r < d.rows(); ++r) {
    (plan.fold_of_row[static_cast<std::size_t>(r)] == fold ? test_idx : train_idx).push_back(r);
  }

  Matrix train(static_cast<Eigen::Index>(train_idx.size()), space.cols());
  std::vector<int> train_labels(train_idx.size());
  for (std::size_t i = 0; i < train_idx.size(); ++i) {
    train.row(static_cast<Eigen::Index>(i)) = space.row(train_idx[i]);
    train_labels[i] = d.labels[static_cast<std::size_t>(train_idx[i])];
  }

  const int b = d.num_classes();
  FoldResult res;
  res.fold = fold;
  res.confusion.assign(static_cast<std::size_t>(b), std::vector<int>(static_cast<std::size_t>(b), 0));
  int hits = 0;
  for (int r : test_idx) {
    const int predicted = knn_classify(train, train_labels, space.row(r), metric);
    const int truth = d.labels[static_cast<std::size_t>(r)];
    ++res.confusion[static_cast<std::size_t>(truth - 1)][static_cast<std::size_t>(predicted - 1)];
    if (predicted == truth) ++hits;
  }
  res.accuracy = test_idx.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(test_idx.size());
  return res;
}

} // namespace

std::vector<std::vector<FoldResult>> cross_validate_multi(const Dataset& d,
                                                          const TrainConfig& config,
                                                          const std::vector<MetricKind>& kinds) {
  const FoldPlan plan = make_folds(d, config.seed);
  const bool needs_training =
      std::any_of(kinds.begin(), kinds.end(),
                  [](MetricKind k) { return k != MetricKind::raw_euclidean; });

  const DistanceFn euclid = [](const RowVector& a, const RowVector& b) {
    return (a - b).norm();
  };

  std::vector<std::vector<FoldResult>> results(kinds.size());
  for (int fold = 0; fold < FoldPlan::kFolds; ++fold) {
    std::optional<TrainedModel> model;
    Matrix latent;
    if (needs_training) {
      TrainConfig fold_config = config;
      fold_config.seed = config.seed + static_cast<std::uint64_t>(fold);
      try {
        model = train(d, plan, fold, fold_config);
      } catch (const std::exception& e) {
        throw std::runtime_error("fold " + std::to_string(fold) + ": " + e.what());
      }
      latent = encode(model->params, d.features);
    }

    for (std::size_t k = 0; k < kinds.size(); ++k) {
      switch (kinds[k]) {
        case MetricKind::raw_euclidean:
          results[k].push_back(score_fold(d, plan, fold, d.features, euclid));
          break;
        case MetricKind::smell_euclidean:
          results[k].push_back(score_fold(d, plan, fold, latent, euclid));
          break;
        case MetricKind::smell: {
          const MarkerSet& markers = model->markers;
          const DistanceFn q_minus = [&markers](const RowVector& a, const RowVector& b) {
            return latent_q_minus(a, b, markers);
          };
          results[k].push_back(score_fold(d, plan, fold, latent, q_minus));
          break;
        }
      }
    }
  }
  return results;
}

std::vector<FoldResult> cross_validate(const Dataset& d, const TrainConfig& config,
                                       MetricKind kind) {
  return cross_validate_multi(d, config, {kind}).front();
}

double MethodScores::mean() const {
  double s = 0.0;
  for (double a : fold_accuracies) s += a;
  return fold_accuracies.empty() ? 0.0 : s / static_cast<double>(fold_accuracies.size());
}

double MethodScores::stddev() const {
  if (fold_accuracies.size() < 2) return 0.0;
  const double m = mean();
  double s = 0.0;
  for (double a : fold_accuracies) s += (a - m) * (a - m);
  return std::sqrt(s / static_cast<double>(fold_accuracies.size() - 1));
}

std::vector<MethodScores> run_ablations(const Dataset& d, const TrainConfig& base_config) {
  std::vector<MethodScores> out;
  auto collect = [](const std::string& name, const std::vector<FoldResult>& folds) {
    MethodScores ms;
    ms.method = name;
    for (const auto& f : folds) ms.fold_accuracies.push_back(f.accuracy);
    return ms;
  };

  // full and the Euclidean-latent variant share identical training
  auto both = cross_validate_multi(d, base_config,
                                   {MetricKind::smell, MetricKind::smell_euclidean});
  out.push_back(collect("smell", both[0]));

  TrainConfig no_rr = base_config;
  no_rr.zero_r_r = true;
  out.push_back(collect("smell_rr0", cross_validate(d, no_rr, MetricKind::smell)));

  TrainConfig no_rd = base_config;
  no_rd.zero_r_d = true;
  out.push_back(collect("smell_rd0", cross_validate(d, no_rd, MetricKind::smell)));

  TrainConfig neither = base_config;
  neither.zero_r_r = true;
  neither.zero_r_d = true;
  out.push_back(collect("smell_rr0_rd0", cross_validate(d, neither, MetricKind::smell)));

  out.push_back(collect("smell_euclidean", both[1]));
  return out;
}

BenchmarkSummary aggregate(const std::vector<std::string>& dataset_names,
                           const std::vector<std::string>& method_names,
                           const std::vector<std::vector<double>>& accuracies) {
  const std::size_t nd = dataset_names.size();
  const std::size_t nm = method_names.size();
  if (accuracies.size() != nd) throw std::invalid_argument("aggregate: ragged input");
  for (const auto& row : accuracies) {
    if (row.size() != nm) throw std::invalid_argument("aggregate: ragged input");
  }

  BenchmarkSummary summary;
  summary.datasets = dataset_names;
  summary.methods.resize(nm);
  for (std::size_t m = 0; m < nm; ++m) summary.methods[m].method = method_names[m];

  for (std::size_t ds = 0; ds < nd; ++ds) {
    const auto& row = accuracies[ds];
    const double best = *std::max_element(row.begin(), row.end());
    for (std::size_t m = 0; m < nm; ++m) {
      // minimum rank shared by ties: 1 + count of strictly better methods
      int rank = 1;
      for (std::size_t o = 0; o < nm; ++o) {
        if (row[o] > row[m]) ++rank;
      }
      auto& agg = summary.methods[m];
      agg.accuracy_avg += row[m];
      agg.ranking_avg += rank;
      agg.diff_avg += best - row[m];
      if (row[m] == best) ++agg.firsts;
    }
  }
  for (auto& agg : summary.methods) {
    agg.accuracy_avg /= static_cast<double>(nd);
    agg.ranking_avg /= static_cast<double>(nd);
    agg.diff_avg /= static_cast<double>(nd);
  }
  return summary;
}

} // namespace smell
