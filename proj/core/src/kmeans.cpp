#include "smell/kmeans.hpp"

#include <limits>
#include <set>
#include <vector>

namespace smell {

Matrix lloyd_kmeans(const Matrix& points, int k, Rng& rng, int max_iter, double tol) {
  const Eigen::Index n = points.rows();
  if (k < 1) throw std::invalid_argument("kmeans: k must be >= 1");

  std::set<std::vector<double>> distinct;
  for (Eigen::Index i = 0; i < n && static_cast<int>(distinct.size()) < k; ++i) {
    distinct.insert(std::vector<double>(points.row(i).begin(), points.row(i).end()));
  }
  if (static_cast<int>(distinct.size()) < k) {
    throw UserError("kmeans: fewer distinct points than requested centroids");
  }

  // k-means++ seeding
  Matrix centroids(k, points.cols());
  centroids.row(0) = points.row(static_cast<Eigen::Index>(rng.uniform_int(n)));
  Vector dist2 = (points.rowwise() - centroids.row(0)).rowwise().squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = dist2.sum();
    Eigen::Index pick = 0;
    if (total > 0.0) {
      double target = rng.uniform() * total;
      for (; pick < n - 1; ++pick) {
        if (target < dist2(pick)) break;
        target -= dist2(pick);
      }
    } else {
      pick = static_cast<Eigen::Index>(rng.uniform_int(n));
    }
    centroids.row(c) = points.row(pick);
    dist2 = dist2.cwiseMin((points.rowwise() - centroids.row(c)).rowwise().squaredNorm());
  }

  std::vector<int> assign(static_cast<std::size_t>(n), -1);
  for (int iter = 0; iter < max_iter; ++iter) {
    for (Eigen::Index i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      int arg = 0;
      for (int c = 0; c < k; ++c) {
        const double d = (points.row(i) - centroids.row(c)).squaredNorm();
        if (d < best) {
          best = d;
          arg = c;
        }
      }
      assign[static_cast<std::size_t>(i)] = arg;
    }

    Matrix next = Matrix::Zero(k, points.cols());
    std::vector<int> count(static_cast<std::size_t>(k), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      next.row(assign[static_cast<std::size_t>(i)]) += points.row(i);
      ++count[static_cast<std::size_t>(assign[static_cast<std::size_t>(i)])];
    }
    for (int c = 0; c < k; ++c) {
      if (count[static_cast<std::size_t>(c)] > 0) {
        next.row(c) /= count[static_cast<std::size_t>(c)];
      } else {
        // revive an empty cluster at the point farthest from its centroid
        Eigen::Index far = 0;
        double best = -1.0;
        for (Eigen::Index i = 0; i < n; ++i) {
          const double d =
              (points.row(i) - centroids.row(assign[static_cast<std::size_t>(i)])).squaredNorm();
          if (d > best) {
            best = d;
            far = i;
          }
        }
        next.row(c) = points.row(far);
      }
    }

    const double moved = (next - centroids).rowwise().norm().maxCoeff();
    centroids = next;
    if (moved < tol) break;
  }
  return centroids;
}

} // namespace smell
