#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "smell/dataset.hpp"

using namespace smell;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  const auto path = (std::filesystem::temp_directory_path() / name).string();
  std::ofstream out(path);
  out << content;
  return path;
}

} // namespace

TEST_CASE("load_csv encodes labels in first-appearance order") {
  const auto path = write_temp("ds_basic.csv",
                               "1.0,2.0,cat\n"
                               "3.0,4.0,dog\n"
                               "5.0,6.0,cat\n"
                               "7.0,8.0,dog\n");
  const Dataset d = load_csv(path);
  CHECK(d.rows() == 4);
  CHECK(d.cols() == 2);
  CHECK(d.labels == std::vector<int>{1, 2, 1, 2});
  CHECK(d.num_classes() == 2);
  CHECK(d.name == "ds_basic");
  CHECK(d.features(2, 1) == doctest::Approx(6.0));
}

TEST_CASE("load_csv honors header flag and label column choice") {
  const auto path = write_temp("ds_header.csv",
                               "label,f0,f1\n"
                               "a,1,2\n"
                               "b,3,4\n"
                               "a,5,6\n"
                               "b,7,8\n");
  CsvOptions opts;
  opts.has_header = true;
  opts.label_column = 0;
  const Dataset d = load_csv(path, opts);
  CHECK(d.cols() == 2);
  CHECK(d.labels == std::vector<int>{1, 2, 1, 2});
  CHECK(d.features(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("load_csv error cases") {
  CHECK_THROWS_AS(load_csv("/nonexistent/nope.csv"), UserError);

  const auto bad_cell = write_temp("ds_bad.csv", "1,x,a\n2,3,b\n1,1,a\n2,2,b\n");
  CHECK_THROWS_WITH_AS(load_csv(bad_cell), doctest::Contains("non-numeric"), UserError);

  const auto single = write_temp("ds_single.csv", "1,2,a\n3,4,a\n");
  CHECK_THROWS_WITH_AS(load_csv(single), doctest::Contains("single-class"), UserError);

  const auto tiny_class = write_temp("ds_tiny.csv", "1,2,a\n3,4,a\n5,6,b\n");
  CHECK_THROWS_WITH_AS(load_csv(tiny_class), doctest::Contains("fewer than 2"), UserError);
}

TEST_CASE("minmax_normalize maps each column to [0,1], constants to 0") {
  Dataset d;
  d.features.resize(3, 2);
  d.features << 1.0, 7.0, 3.0, 7.0, 5.0, 7.0;
  d.labels = {1, 2, 1};
  const Dataset n = minmax_normalize(d);
  CHECK(n.features(0, 0) == doctest::Approx(0.0));
  CHECK(n.features(1, 0) == doctest::Approx(0.5));
  CHECK(n.features(2, 0) == doctest::Approx(1.0));
  CHECK(n.features.col(1).isZero());
}

TEST_CASE("downsample keeps class proportions and row order") {
  Dataset d;
  d.features.resize(20, 1);
  for (int r = 0; r < 20; ++r) {
    d.features(r, 0) = r;
    d.labels.push_back(r < 10 ? 1 : 2);
  }
  const Dataset s = downsample(d, 0.5, 42);
  CHECK(s.rows() == 10);
  int c1 = 0;
  for (int y : s.labels) c1 += (y == 1);
  CHECK(c1 == 5);
  for (Eigen::Index r = 1; r < s.rows(); ++r) {
    CHECK(s.features(r, 0) > s.features(r - 1, 0)); // original order preserved
  }
  CHECK(downsample(d, 1.0, 0).rows() == 20);
  CHECK_THROWS_AS(downsample(d, 0.05, 0), UserError);
  CHECK_THROWS_AS(downsample(d, 1.5, 0), UserError);
}

TEST_CASE("make_folds is stratified and deterministic") {
  Dataset d;
  d.features.resize(100, 1);
  for (int r = 0; r < 100; ++r) {
    d.features(r, 0) = r;
    d.labels.push_back(r < 60 ? 1 : 2);
  }
  const FoldPlan a = make_folds(d, 7);
  const FoldPlan b = make_folds(d, 7);
  CHECK(a.fold_of_row == b.fold_of_row);

  // 60/10 = 6 members of class 1 and 4 of class 2 in every fold
  for (int fold = 0; fold < FoldPlan::kFolds; ++fold) {
    int c1 = 0, c2 = 0;
    for (int r = 0; r < 100; ++r) {
      if (a.fold_of_row[static_cast<std::size_t>(r)] != fold) continue;
      (d.labels[static_cast<std::size_t>(r)] == 1 ? c1 : c2)++;
    }
    CHECK(c1 == 6);
    CHECK(c2 == 4);
  }

  const FoldPlan c = make_folds(d, 8);
  CHECK(a.fold_of_row != c.fold_of_row);
}
