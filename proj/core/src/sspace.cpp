#include "smell/sspace.hpp"

#include "smell/kmeans.hpp"

namespace smell {

Vector sspace_map(const Vector& z_i, const Vector& z_j) {
  if (z_i.size() != z_j.size()) {
    throw std::invalid_argument("sspace_map: dimension mismatch");
  }
  return (z_i - z_j).cwiseAbs();
}

Matrix sspace_map(const Matrix& z_i, const Matrix& z_j) {
  if (z_i.rows() != z_j.rows() || z_i.cols() != z_j.cols()) {
    throw std::invalid_argument("sspace_map: dimension mismatch");
  }
  return (z_i - z_j).cwiseAbs();
}

PairScore student_t_scores(const Vector& s, const MarkerSet& markers) {
  const int k = static_cast<int>(markers.positive.rows());
  const int w = markers.total();
  if (k < 1 || w - k < 1) throw std::invalid_argument("student_t_scores: empty marker group");
  if (markers.dim() != s.size()) {
    throw std::invalid_argument("student_t_scores: marker dimension mismatch");
  }

  PairScore score;
  score.per_marker.resize(w);
  for (int m = 0; m < k; ++m) {
    score.per_marker(m) = 1.0 / (1.0 + (s.transpose() - markers.positive.row(m)).squaredNorm());
  }
  for (int m = 0; m < w - k; ++m) {
    score.per_marker(k + m) =
        1.0 / (1.0 + (s.transpose() - markers.negative.row(m)).squaredNorm());
  }
  score.per_marker /= score.per_marker.sum();
  score.q_plus = score.per_marker.head(k).sum();
  score.q_minus = score.per_marker.tail(w - k).sum();
  return score;
}

MarkerSet marker_init(const Matrix& similar_svecs, const Matrix& dissimilar_svecs,
                      int k_positive, int k_negative, Rng& rng) {
  if (k_positive < 1 || k_negative < 1) {
    throw std::invalid_argument("marker_init: need at least one marker per group");
  }
  MarkerSet m;
  m.positive = lloyd_kmeans(similar_svecs, k_positive, rng);
  m.negative = lloyd_kmeans(dissimilar_svecs, k_negative, rng);
  return m;
}

double latent_q_minus(const RowVector& z_i, const RowVector& z_j, const MarkerSet& markers) {
  const Vector s = sspace_map(Vector(z_i.transpose()), Vector(z_j.transpose()));
  return student_t_scores(s, markers).q_minus;
}

double distance_for_knn(const RowVector& x_i, const RowVector& x_j,
                        const NetworkParams& params, const MarkerSet& markers) {
  Matrix x(2, x_i.size());
  x.row(0) = x_i;
  x.row(1) = x_j;
  const Matrix z = encode(params, x);
  return latent_q_minus(z.row(0), z.row(1), markers);
}

} // namespace smell
