#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "smell/synth.hpp"

using namespace smell;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

TEST_CASE("disjoint_regions: 300 rows -> 150 per class, class 1 split 75/75") {
  const Dataset d = synth_disjoint_regions(300, 4.0, 0.5, 9);
  REQUIRE(d.rows() == 300);
  int c1 = 0, c2 = 0, left = 0, right = 0;
  for (int r = 0; r < 300; ++r) {
    if (d.labels[static_cast<std::size_t>(r)] == 1) {
      ++c1;
      (d.features(r, 0) < 0 ? left : right)++;
    } else {
      ++c2;
    }
  }
  CHECK(c1 == 150);
  CHECK(c2 == 150);
  CHECK(left == 75);
  CHECK(right == 75);
  // class 2 sits between the two class-1 clusters
  double c2_max_abs = 0.0;
  for (int r = 150; r < 300; ++r) c2_max_abs = std::max(c2_max_abs, std::abs(d.features(r, 0)));
  CHECK(c2_max_abs < 4.0 - 0.5);
}

TEST_CASE("two_gaussians separates along the first axis") {
  const Dataset d = synth_two_gaussians(200, 8.0, 0.5, 4);
  CHECK(d.rows() == 200);
  for (int r = 0; r < 100; ++r) CHECK(d.features(r, 0) < 0.0);
  for (int r = 100; r < 200; ++r) CHECK(d.features(r, 0) > 0.0);
}

TEST_CASE("ring_disk radii are disjoint") {
  const Dataset d = synth_ring_disk(200, 3.0, 0.5, 8);
  for (int r = 0; r < 100; ++r) {
    CHECK(d.features.row(r).norm() <= 0.5 + 1e-9); // disk radius = noise
  }
  for (int r = 100; r < 200; ++r) {
    CHECK(d.features.row(r).norm() > 1.5);
  }
}

TEST_CASE("same seed gives identical CSV bytes") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto p1 = (dir / "synth_a.csv").string();
  const auto p2 = (dir / "synth_b.csv").string();
  write_dataset_csv(synth_disjoint_regions(100, 4.0, 0.5, 77), p1);
  write_dataset_csv(synth_disjoint_regions(100, 4.0, 0.5, 77), p2);
  CHECK(slurp(p1) == slurp(p2));
  write_dataset_csv(synth_disjoint_regions(100, 4.0, 0.5, 78), p2);
  CHECK(slurp(p1) != slurp(p2));
}

TEST_CASE("generated CSVs round-trip through load_csv") {
  const auto path = (std::filesystem::temp_directory_path() / "synth_rt.csv").string();
  const Dataset d = synth_two_gaussians(60, 4.0, 0.5, 3);
  write_dataset_csv(d, path);
  CsvOptions opts;
  opts.has_header = true;
  const Dataset r = load_csv(path, opts);
  REQUIRE(r.rows() == d.rows());
  CHECK(r.labels == d.labels);
  CHECK((r.features - d.features).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}
