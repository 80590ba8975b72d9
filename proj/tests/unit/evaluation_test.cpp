#include <doctest.h>

#include <algorithm>
#include <map>

#include "smell/embedding_export.hpp"
#include "smell/evaluation.hpp"
#include "smell/synth.hpp"

using namespace smell;

namespace {

// Straightforward reference KNN used as an oracle: full sort, same tie rules.
int brute_force_knn(const Matrix& train, const std::vector<int>& labels,
                    const RowVector& query, const DistanceFn& metric, int k) {
  std::vector<std::pair<double, int>> all;
  for (Eigen::Index i = 0; i < train.rows(); ++i) {
    all.emplace_back(metric(train.row(i), query), static_cast<int>(i));
  }
  std::sort(all.begin(), all.end());

  std::map<int, std::pair<int, double>> votes;
  for (int t = 0; t < k; ++t) {
    auto& v = votes[labels[static_cast<std::size_t>(all[static_cast<std::size_t>(t)].second)]];
    v.first += 1;
    v.second += all[static_cast<std::size_t>(t)].first;
  }
  int best = 0, best_count = -1;
  double best_sum = 1e300;
  for (const auto& [label, v] : votes) {
    if (v.first > best_count || (v.first == best_count && v.second < best_sum)) {
      best = label;
      best_count = v.first;
      best_sum = v.second;
    }
  }
  return best;
}

} // namespace

TEST_CASE("knn_classify matches the brute-force oracle") {
  Rng rng(31);
  const DistanceFn euclid = [](const RowVector& a, const RowVector& b) {
    return (a - b).norm();
  };
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 10 + static_cast<int>(rng.uniform_int(60));
    Matrix train(n, 2);
    std::vector<int> labels;
    for (int i = 0; i < n; ++i) {
      train(i, 0) = rng.normal();
      train(i, 1) = rng.normal();
      labels.push_back(1 + static_cast<int>(rng.uniform_int(3)));
    }
    for (int q = 0; q < 10; ++q) {
      RowVector query(2);
      query << rng.normal(), rng.normal();
      CHECK(knn_classify(train, labels, query, euclid) ==
            brute_force_knn(train, labels, query, euclid, 3));
    }
  }
}

TEST_CASE("knn tie-breaking prefers smaller summed distance, then lower label") {
  const DistanceFn euclid = [](const RowVector& a, const RowVector& b) {
    return (a - b).norm();
  };

  // three distinct labels among the neighbors: 1/1/1 count tie, the label of
  // the closest point (smallest summed distance) wins
  Matrix train(3, 1);
  train << 0.0, 1.0, 2.0;
  RowVector query(1);
  query << 0.1;
  CHECK(knn_classify(train, {7, 5, 3}, query, euclid) == 7);

  // symmetric distances: count and sum both tie, the lower label wins
  Matrix sym(3, 1);
  sym << -1.0, 1.0, 3.0;
  RowVector zero(1);
  zero << 0.0;
  CHECK(knn_classify(sym, {9, 5, 2}, zero, euclid) == 5);
}

TEST_CASE("cross_validate_multi on an easy dataset") {
  const Dataset d = minmax_normalize(synth_two_gaussians(60, 6.0, 0.4, 5));
  TrainConfig c;
  c.hidden = {8};
  c.latent_dim = 4;
  c.batch_size = 8;
  c.pretrain_epochs = 5;
  c.joint_epochs = 8;
  c.seed = 2;

  const auto res = cross_validate_multi(
      d, c, {MetricKind::smell, MetricKind::smell_euclidean, MetricKind::raw_euclidean});
  REQUIRE(res.size() == 3);
  for (const auto& folds : res) {
    REQUIRE(static_cast<int>(folds.size()) == FoldPlan::kFolds);
    for (const auto& f : folds) {
      CHECK(f.accuracy >= 0.0);
      CHECK(f.accuracy <= 1.0);
      // confusion matrix row sums equal the fold's test count
      int total = 0;
      for (const auto& row : f.confusion) {
        for (int cell : row) total += cell;
      }
      CHECK(total == 6); // 60 rows, 10 folds
    }
  }
  // the blobs are trivially separable for the raw metric
  MethodScores raw;
  for (const auto& f : res[2]) raw.fold_accuracies.push_back(f.accuracy);
  CHECK(raw.mean() > 0.95);
}

TEST_CASE("MethodScores mean and sample stddev") {
  MethodScores s;
  s.fold_accuracies = {0.8, 1.0};
  CHECK(s.mean() == doctest::Approx(0.9));
  CHECK(s.stddev() == doctest::Approx(std::sqrt(0.02 / 1.0)).epsilon(1e-12));
  MethodScores one;
  one.fold_accuracies = {0.7};
  CHECK(one.stddev() == 0.0);
}

TEST_CASE("aggregate hand example with ties") {
  // dataset rows x method cols
  const std::vector<std::vector<double>> acc = {
      {0.9, 0.8, 0.9},  // methods 1 and 3 tie for first (rank 1), method 2 rank 3
      {0.5, 0.7, 0.6},  // order: 2, 3, 1
  };
  const BenchmarkSummary s =
      aggregate({"d1", "d2"}, {"m1", "m2", "m3"}, acc);
  REQUIRE(s.methods.size() == 3);

  CHECK(s.methods[0].accuracy_avg == doctest::Approx(0.7));
  CHECK(s.methods[1].accuracy_avg == doctest::Approx(0.75));
  CHECK(s.methods[2].accuracy_avg == doctest::Approx(0.75));

  CHECK(s.methods[0].ranking_avg == doctest::Approx((1 + 3) / 2.0));
  CHECK(s.methods[1].ranking_avg == doctest::Approx((3 + 1) / 2.0));
  CHECK(s.methods[2].ranking_avg == doctest::Approx((1 + 2) / 2.0));

  CHECK(s.methods[0].diff_avg == doctest::Approx((0.0 + 0.2) / 2.0));
  CHECK(s.methods[1].diff_avg == doctest::Approx((0.1 + 0.0) / 2.0));
  CHECK(s.methods[2].diff_avg == doctest::Approx((0.0 + 0.1) / 2.0));

  CHECK(s.methods[0].firsts == 1); // tie counts for both tied methods
  CHECK(s.methods[1].firsts == 1);
  CHECK(s.methods[2].firsts == 1);

  CHECK_THROWS(aggregate({"d1"}, {"m1", "m2"}, {{0.5}}));
}

TEST_CASE("fit_pca2 returns orthonormal leading components") {
  Rng rng(9);
  Matrix x(200, 5);
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const double t = rng.normal(0.0, 3.0); // dominant direction along col 0
    x(r, 0) = t;
    for (Eigen::Index c = 1; c < 5; ++c) x(r, c) = 0.2 * rng.normal() + 0.1 * t;
  }
  const Pca2 p = fit_pca2(x);
  REQUIRE(p.components.rows() == 5);
  REQUIRE(p.components.cols() == 2);
  CHECK((p.components.transpose() * p.components - Matrix::Identity(2, 2)).norm() < 1e-10);

  const Matrix proj = p.project(x);
  CHECK(proj.rows() == 200);
  // first component captures at least as much variance as the second
  const double v0 = proj.col(0).squaredNorm();
  const double v1 = proj.col(1).squaredNorm();
  CHECK(v0 >= v1);
  // sign convention: largest-magnitude loading is positive
  Eigen::Index arg = 0;
  p.components.col(0).cwiseAbs().maxCoeff(&arg);
  CHECK(p.components(arg, 0) > 0.0);
}
