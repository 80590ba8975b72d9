#include "smell/synth.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "smell/rng.hpp"

namespace smell {
namespace {

Dataset make(int rows, const std::string& name) {
  Dataset d;
  d.name = name;
  d.features.resize(rows, 2);
  d.labels.resize(static_cast<std::size_t>(rows));
  return d;
}

} // namespace

Dataset synth_two_gaussians(int rows, double separation, double noise, std::uint64_t seed) {
  Rng rng(seed);
  Dataset d = make(rows, "two_gaussians");
  const int half = rows / 2;
  for (int r = 0; r < rows; ++r) {
    const bool second = r >= half;
    d.features(r, 0) = rng.normal(second ? separation / 2.0 : -separation / 2.0, noise);
    d.features(r, 1) = rng.normal(0.0, noise);
    d.labels[static_cast<std::size_t>(r)] = second ? 2 : 1;
  }
  return d;
}

Dataset synth_disjoint_regions(int rows, double separation, double noise, std::uint64_t seed) {
  Rng rng(seed);
  Dataset d = make(rows, "disjoint_regions");
  const int half = rows / 2;        // class 1 rows
  const int quarter = half / 2;     // per flanking cluster
  for (int r = 0; r < rows; ++r) {
    if (r < half) {
      const double center = r < quarter ? -separation : separation;
      d.features(r, 0) = rng.normal(center, noise);
      d.features(r, 1) = rng.normal(0.0, noise);
      d.labels[static_cast<std::size_t>(r)] = 1;
    } else {
      d.features(r, 0) = rng.normal(0.0, noise);
      d.features(r, 1) = rng.normal(0.0, noise);
      d.labels[static_cast<std::size_t>(r)] = 2;
    }
  }
  return d;
}

Dataset synth_ring_disk(int rows, double ring_radius, double noise, std::uint64_t seed) {
  Rng rng(seed);
  Dataset d = make(rows, "ring_disk");
  const int half = rows / 2;
  for (int r = 0; r < rows; ++r) {
    if (r < half) { // disk
      const double radius = noise * std::sqrt(rng.uniform());
      const double theta = rng.uniform(0.0, 2.0 * M_PI);
      d.features(r, 0) = radius * std::cos(theta);
      d.features(r, 1) = radius * std::sin(theta);
      d.labels[static_cast<std::size_t>(r)] = 1;
    } else { // ring
      const double radius = ring_radius + rng.normal(0.0, noise * 0.2);
      const double theta = rng.uniform(0.0, 2.0 * M_PI);
      d.features(r, 0) = radius * std::cos(theta);
      d.features(r, 1) = radius * std::sin(theta);
      d.labels[static_cast<std::size_t>(r)] = 2;
    }
  }
  return d;
}

void write_dataset_csv(const Dataset& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw UserError("cannot write dataset CSV: " + path);
  for (Eigen::Index c = 0; c < d.cols(); ++c) out << "f" << c << ",";
  out << "label\n";
  char buf[32];
  for (Eigen::Index r = 0; r < d.rows(); ++r) {
    for (Eigen::Index c = 0; c < d.cols(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", d.features(r, c));
      out << buf << ",";
    }
    out << d.labels[static_cast<std::size_t>(r)] << "\n";
  }
}

} // namespace smell
