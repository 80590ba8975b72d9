#pragma once

#include <cstdint>
#include <vector>

#include "smell/dataset.hpp"
#include "smell/network.hpp"
#include "smell/pairs.hpp"
#include "smell/types.hpp"

namespace smell {

/// Learnable reference points in S-space. Rows are markers.
struct MarkerSet {
  Matrix positive; // k x n
  Matrix negative; // (w-k) x n

  int total() const { return static_cast<int>(positive.rows() + negative.rows()); }
  Eigen::Index dim() const { return positive.cols(); }
};

/// Normalized Student-t kernel scores of one s-vector against a marker set.
/// per_marker lists positives first, then negatives; entries sum to 1.
struct PairScore {
  double q_plus = 0.0;
  double q_minus = 0.0;
  Vector per_marker;
};

/// Element-wise |z_i - z_j|.
Vector sspace_map(const Vector& z_i, const Vector& z_j);

/// Batched version: rows of z_i/z_j are paired row-wise.
Matrix sspace_map(const Matrix& z_i, const Matrix& z_j);

PairScore student_t_scores(const Vector& s, const MarkerSet& markers);

/// Lloyd/k-means++ centroids of similar-pair and dissimilar-pair s-vector
/// samples, one clustering per marker group.
MarkerSet marker_init(const Matrix& similar_svecs, const Matrix& dissimilar_svecs,
                      int k_positive, int k_negative, Rng& rng);

/// KNN-usable dissimilarity: q^- of the pair's s-vector, in [0,1].
double distance_for_knn(const RowVector& x_i, const RowVector& x_j,
                        const NetworkParams& params, const MarkerSet& markers);

/// Same dissimilarity evaluated directly on latent vectors.
double latent_q_minus(const RowVector& z_i, const RowVector& z_j, const MarkerSet& markers);

} // namespace smell
