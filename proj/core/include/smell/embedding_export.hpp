#pragma once

#include <string>

#include "smell/trainer.hpp"

namespace smell {

struct Pca2 {
  Matrix components; // n x 2, orthonormal columns sorted by eigenvalue
  RowVector mean;
  Matrix project(const Matrix& x) const { return (x.rowwise() - mean) * components; }
};

/// Two leading principal components via covariance eigendecomposition. Sign
/// fixed so the largest-magnitude loading of each component is positive.
Pca2 fit_pca2(const Matrix& x);

/// Writes latent.csv, svectors.csv (200 similar + 200 dissimilar sampled
/// pairs, PCA coords when requested) and markers.json under out_dir.
void export_embeddings(const TrainedModel& model, const Dataset& d,
                       const std::string& out_dir, bool with_pca2);

} // namespace smell
