#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "smell/types.hpp"

namespace smell {

/// Tabular dataset. Labels are contiguous integers 1..b in order of first
/// appearance in the source file.
struct Dataset {
  Matrix features; // v rows x m columns
  std::vector<int> labels;
  std::string name;

  Eigen::Index rows() const { return features.rows(); }
  Eigen::Index cols() const { return features.cols(); }
  int num_classes() const;
};

struct CsvOptions {
  bool has_header = false;
  int label_column = -1; // -1 means last column
};

Dataset load_csv(const std::string& path, const CsvOptions& opts = {});

/// Per-column x' = (x - min) / (max - min); constant columns map to 0.
Dataset minmax_normalize(const Dataset& d);

/// Stratified random subset keeping per-class proportions within rounding.
Dataset downsample(const Dataset& d, double fraction, std::uint64_t seed);

struct FoldPlan {
  std::vector<int> fold_of_row; // values in 0..9
  std::uint64_t seed = 0;
  static constexpr int kFolds = 10;
};

/// Stratified 10-fold plan. Classes with fewer than 10 members are spread
/// round-robin across folds.
FoldPlan make_folds(const Dataset& d, std::uint64_t seed);

} // namespace smell
