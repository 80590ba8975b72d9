#include <doctest.h>

#include "smell/kmeans.hpp"

using namespace smell;

TEST_CASE("lloyd_kmeans recovers well-separated clusters") {
  Rng data_rng(1);
  Matrix points(60, 2);
  const double centers[3][2] = {{0.0, 0.0}, {10.0, 0.0}, {0.0, 10.0}};
  for (int i = 0; i < 60; ++i) {
    const auto c = i % 3;
    points(i, 0) = centers[c][0] + data_rng.normal(0.0, 0.2);
    points(i, 1) = centers[c][1] + data_rng.normal(0.0, 0.2);
  }

  Rng rng(7);
  const Matrix centroids = lloyd_kmeans(points, 3, rng);
  REQUIRE(centroids.rows() == 3);

  // every true center has a centroid within noise distance
  for (const auto& c : centers) {
    double best = 1e9;
    for (Eigen::Index m = 0; m < 3; ++m) {
      const double dx = centroids(m, 0) - c[0];
      const double dy = centroids(m, 1) - c[1];
      best = std::min(best, dx * dx + dy * dy);
    }
    CHECK(best < 0.05);
  }
}

TEST_CASE("lloyd_kmeans is deterministic in its rng") {
  Rng data_rng(2);
  Matrix points(40, 3);
  for (Eigen::Index r = 0; r < points.rows(); ++r) {
    for (Eigen::Index c = 0; c < points.cols(); ++c) points(r, c) = data_rng.normal();
  }
  Rng a(5), b(5);
  CHECK(lloyd_kmeans(points, 4, a) == lloyd_kmeans(points, 4, b));
}

TEST_CASE("lloyd_kmeans rejects fewer distinct points than centroids") {
  Matrix points(5, 2);
  points.setOnes();
  points.row(0) << 0.0, 0.0;
  Rng rng(0);
  CHECK_THROWS(lloyd_kmeans(points, 3, rng));
  CHECK_NOTHROW(lloyd_kmeans(points, 2, rng));
}
