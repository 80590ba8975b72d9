#include "smell/pairs.hpp"

namespace smell {

PairBatch sample_pair_batch(const Dataset& d, const FoldPlan& plan, int test_fold,
                            int batch_size, Rng& rng) {
  std::vector<std::vector<int>> by_class(static_cast<std::size_t>(d.num_classes()));
  std::vector<int> train_rows;
  for (int r = 0; r < d.rows(); ++r) {
    if (test_fold >= 0 && plan.fold_of_row[static_cast<std::size_t>(r)] == test_fold) continue;
    by_class[static_cast<std::size_t>(d.labels[static_cast<std::size_t>(r)] - 1)].push_back(r);
    train_rows.push_back(r);
  }

  // Class weights c*(c-1) make the class-then-members draw uniform over all
  // ordered similar pairs.
  std::vector<double> weight(by_class.size(), 0.0);
  double total_weight = 0.0;
  int nonempty_classes = 0;
  for (std::size_t c = 0; c < by_class.size(); ++c) {
    const auto n = static_cast<double>(by_class[c].size());
    weight[c] = n * (n - 1.0);
    total_weight += weight[c];
    if (!by_class[c].empty()) ++nonempty_classes;
  }
  if (total_weight <= 0.0) throw UserError("no eligible similar pair in training folds");
  if (nonempty_classes < 2) throw UserError("no eligible dissimilar pair in training folds");

  PairBatch batch;
  const int n_similar = (batch_size + 1) / 2;
  const int n_dissimilar = batch_size / 2;
  batch.pairs.reserve(static_cast<std::size_t>(batch_size));

  for (int p = 0; p < n_similar; ++p) {
    double pick = rng.uniform() * total_weight;
    std::size_t c = 0;
    for (; c + 1 < weight.size(); ++c) {
      if (pick < weight[c]) break;
      pick -= weight[c];
    }
    const auto& members = by_class[c];
    const auto i = members[rng.uniform_int(members.size())];
    int j = i;
    while (j == i) j = members[rng.uniform_int(members.size())];
    batch.pairs.push_back({i, j, true});
  }

  for (int p = 0; p < n_dissimilar; ++p) {
    int i, j;
    do {
      i = train_rows[rng.uniform_int(train_rows.size())];
      j = train_rows[rng.uniform_int(train_rows.size())];
    } while (i == j ||
             d.labels[static_cast<std::size_t>(i)] == d.labels[static_cast<std::size_t>(j)]);
    batch.pairs.push_back({i, j, false});
  }
  return batch;
}

} // namespace smell
