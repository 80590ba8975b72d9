#pragma once

#include "smell/rng.hpp"
#include "smell/types.hpp"

namespace smell {

/// Lloyd's algorithm with k-means++ seeding. Rows of `points` are samples.
/// Stops after `max_iter` iterations or when no centroid moves more than
/// `tol`. Throws if there are fewer distinct points than centroids.
Matrix lloyd_kmeans(const Matrix& points, int k, Rng& rng, int max_iter = 50,
                    double tol = 1e-6);

} // namespace smell
