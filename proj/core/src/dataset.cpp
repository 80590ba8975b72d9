#include "smell/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "smell/rng.hpp"

namespace smell {
namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    // trim surrounding whitespace
    const auto a = cell.find_first_not_of(" \t\r");
    const auto b = cell.find_last_not_of(" \t\r");
    cells.push_back(a == std::string::npos ? "" : cell.substr(a, b - a + 1));
  }
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

double parse_feature(const std::string& cell, std::size_t row, std::size_t col) {
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (cell.empty() || end != cell.c_str() + cell.size() || !std::isfinite(v)) {
    throw UserError("non-numeric feature cell '" + cell + "' at row " +
                    std::to_string(row + 1) + ", column " + std::to_string(col + 1));
  }
  return v;
}

std::vector<std::vector<int>> class_members(const Dataset& d) {
  std::vector<std::vector<int>> members(static_cast<std::size_t>(d.num_classes()));
  for (int i = 0; i < d.rows(); ++i) {
    members[static_cast<std::size_t>(d.labels[static_cast<std::size_t>(i)] - 1)].push_back(i);
  }
  return members;
}

} // namespace

int Dataset::num_classes() const {
  int b = 0;
  for (int y : labels) b = std::max(b, y);
  return b;
}

Dataset load_csv(const std::string& path, const CsvOptions& opts) {
  std::ifstream in(path);
  if (!in) throw UserError("cannot open dataset file: " + path);

  std::vector<std::vector<std::string>> table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first && opts.has_header) {
      first = false;
      continue;
    }
    first = false;
    table.push_back(split_line(line));
  }
  if (table.empty()) throw UserError("empty dataset file: " + path);

  const std::size_t ncols = table.front().size();
  if (ncols < 2) throw UserError("dataset needs at least one feature column and a label column");
  const std::size_t label_col =
      opts.label_column < 0 ? ncols - 1 : static_cast<std::size_t>(opts.label_column);
  if (label_col >= ncols) throw UserError("label column out of range");

  Dataset d;
  d.name = path;
  const auto slash = path.find_last_of('/');
  d.name = slash == std::string::npos ? path : path.substr(slash + 1);
  if (const auto dot = d.name.find_last_of('.'); dot != std::string::npos) d.name.resize(dot);

  d.features.resize(static_cast<Eigen::Index>(table.size()), static_cast<Eigen::Index>(ncols - 1));
  d.labels.resize(table.size());

  std::map<std::string, int> label_ids; // first-appearance order
  std::vector<std::string> seen_order;
  for (std::size_t r = 0; r < table.size(); ++r) {
    if (table[r].size() != ncols) {
      throw UserError("ragged CSV row " + std::to_string(r + 1) + " in " + path);
    }
    Eigen::Index c_out = 0;
    for (std::size_t c = 0; c < ncols; ++c) {
      if (c == label_col) continue;
      d.features(static_cast<Eigen::Index>(r), c_out++) = parse_feature(table[r][c], r, c);
    }
    auto [it, inserted] = label_ids.try_emplace(table[r][label_col], 0);
    if (inserted) {
      seen_order.push_back(table[r][label_col]);
      it->second = static_cast<int>(seen_order.size());
    }
    d.labels[r] = it->second;
  }

  if (d.num_classes() < 2) throw UserError("single-class dataset rejected: " + path);
  std::vector<int> counts(static_cast<std::size_t>(d.num_classes()), 0);
  for (int y : d.labels) ++counts[static_cast<std::size_t>(y - 1)];
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] < 2) {
      throw UserError("class with fewer than 2 members: '" + seen_order[c] + "' in " + path);
    }
  }
  return d;
}

Dataset minmax_normalize(const Dataset& d) {
  Dataset out = d;
  for (Eigen::Index c = 0; c < d.cols(); ++c) {
    const double lo = d.features.col(c).minCoeff();
    const double hi = d.features.col(c).maxCoeff();
    if (hi > lo) {
      out.features.col(c) = (d.features.col(c).array() - lo) / (hi - lo);
    } else {
      out.features.col(c).setZero();
    }
  }
  return out;
}

Dataset downsample(const Dataset& d, double fraction, std::uint64_t seed) {
  if (fraction <= 0.0 || fraction > 1.0) throw UserError("downsample fraction must be in (0, 1]");
  if (fraction == 1.0) return d;

  Rng rng(seed);
  std::vector<int> keep;
  for (auto& members : class_members(d)) {
    const auto want = static_cast<std::size_t>(
        std::lround(fraction * static_cast<double>(members.size())));
    if (want < 2) {
      throw UserError("downsample fraction too small to keep at least 2 rows per class");
    }
    rng.shuffle(members);
    keep.insert(keep.end(), members.begin(), members.begin() + static_cast<long>(want));
  }
  std::sort(keep.begin(), keep.end()); // preserve original row order

  Dataset out;
  out.name = d.name;
  out.features.resize(static_cast<Eigen::Index>(keep.size()), d.cols());
  out.labels.resize(keep.size());
  for (std::size_t r = 0; r < keep.size(); ++r) {
    out.features.row(static_cast<Eigen::Index>(r)) = d.features.row(keep[r]);
    out.labels[r] = d.labels[static_cast<std::size_t>(keep[r])];
  }
  return out;
}

FoldPlan make_folds(const Dataset& d, std::uint64_t seed) {
  FoldPlan plan;
  plan.seed = seed;
  plan.fold_of_row.assign(static_cast<std::size_t>(d.rows()), 0);

  Rng rng(seed);
  for (auto& members : class_members(d)) {
    rng.shuffle(members);
    const int start = static_cast<int>(rng.uniform_int(FoldPlan::kFolds));
    for (std::size_t t = 0; t < members.size(); ++t) {
      plan.fold_of_row[static_cast<std::size_t>(members[t])] =
          (start + static_cast<int>(t)) % FoldPlan::kFolds;
    }
  }
  return plan;
}

} // namespace smell
