#pragma once

#include <vector>

#include "smell/dataset.hpp"
#include "smell/rng.hpp"

namespace smell {

struct Pair {
  int i = 0;
  int j = 0;
  bool similar = false; // u = (1,0) when true, (0,1) when false
};

/// Mini-batch of index pairs: ceil(g/2) similar followed by floor(g/2)
/// dissimilar pairs, all drawn from the training folds.
struct PairBatch {
  std::vector<Pair> pairs;
};

/// Uniform sampling with replacement over eligible pairs of each type.
/// test_fold < 0 means the whole dataset is the training side.
PairBatch sample_pair_batch(const Dataset& d, const FoldPlan& plan, int test_fold,
                            int batch_size, Rng& rng);

} // namespace smell
