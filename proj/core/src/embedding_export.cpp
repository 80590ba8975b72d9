#include "smell/embedding_export.hpp"

#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "smell/pairs.hpp"

namespace smell {
namespace {

constexpr int kSampledPairsPerKind = 200;

void write_csv_value(std::ofstream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out << buf;
}

} // namespace

Pca2 fit_pca2(const Matrix& x) {
  Pca2 pca;
  pca.mean = x.colwise().mean();
  const Matrix centered = x.rowwise() - pca.mean;
  const Matrix cov =
      centered.transpose() * centered / std::max<double>(1.0, static_cast<double>(x.rows() - 1));
  Eigen::SelfAdjointEigenSolver<Matrix> solver(cov);
  if (solver.info() != Eigen::Success) throw std::runtime_error("pca: eigendecomposition failed");

  // SelfAdjointEigenSolver sorts ascending; take the last two columns
  const Eigen::Index n = cov.rows();
  if (n < 2) throw std::invalid_argument("pca: need at least 2 dimensions");
  pca.components.resize(n, 2);
  for (int c = 0; c < 2; ++c) {
    Vector comp = solver.eigenvectors().col(n - 1 - c);
    Eigen::Index arg = 0;
    comp.cwiseAbs().maxCoeff(&arg);
    if (comp(arg) < 0.0) comp = -comp;
    pca.components.col(c) = comp;
  }
  return pca;
}

void export_embeddings(const TrainedModel& model, const Dataset& d,
                       const std::string& out_dir, bool with_pca2) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);

  const Matrix z = encode(model.params, d.features);

  {
    std::ofstream out(fs::path(out_dir) / "latent.csv");
    if (!out) throw std::runtime_error("cannot write latent.csv under " + out_dir);
    out << "row,label";
    for (Eigen::Index c = 0; c < z.cols(); ++c) out << ",z" << c;
    out << "\n";
    for (Eigen::Index r = 0; r < z.rows(); ++r) {
      out << r << "," << d.labels[static_cast<std::size_t>(r)];
      for (Eigen::Index c = 0; c < z.cols(); ++c) {
        out << ",";
        write_csv_value(out, z(r, c));
      }
      out << "\n";
    }
  }

  // sampled pairs mapped to S-space
  Rng rng(model.config.seed ^ 0x5370616365ULL);
  FoldPlan whole;
  whole.fold_of_row.assign(static_cast<std::size_t>(d.rows()), 0);
  std::vector<Pair> pairs;
  for (int t = 0; t < kSampledPairsPerKind; ++t) {
    PairBatch b = sample_pair_batch(d, whole, -1, 2, rng);
    pairs.push_back(b.pairs[0]);
    pairs.push_back(b.pairs[1]);
  }
  Matrix svecs(static_cast<Eigen::Index>(pairs.size()), z.cols());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    svecs.row(static_cast<Eigen::Index>(p)) =
        sspace_map(Vector(z.row(pairs[p].i).transpose()), Vector(z.row(pairs[p].j).transpose()))
            .transpose();
  }

  std::optional<Pca2> pca;
  Matrix coords;
  if (with_pca2) {
    pca = fit_pca2(svecs);
    coords = pca->project(svecs);
  }

  {
    std::ofstream out(fs::path(out_dir) / "svectors.csv");
    if (!out) throw std::runtime_error("cannot write svectors.csv under " + out_dir);
    out << "i,j,kind";
    for (Eigen::Index c = 0; c < svecs.cols(); ++c) out << ",s" << c;
    if (with_pca2) out << ",pc1,pc2";
    out << "\n";
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      out << pairs[p].i << "," << pairs[p].j << ","
          << (pairs[p].similar ? "similar" : "dissimilar");
      for (Eigen::Index c = 0; c < svecs.cols(); ++c) {
        out << ",";
        write_csv_value(out, svecs(static_cast<Eigen::Index>(p), c));
      }
      if (with_pca2) {
        out << ",";
        write_csv_value(out, coords(static_cast<Eigen::Index>(p), 0));
        out << ",";
        write_csv_value(out, coords(static_cast<Eigen::Index>(p), 1));
      }
      out << "\n";
    }
  }

  {
    nlohmann::json markers = nlohmann::json::array();
    for (Eigen::Index r = 0; r < model.markers.positive.rows(); ++r) {
      std::vector<double> coords_v(model.markers.positive.row(r).begin(),
                                   model.markers.positive.row(r).end());
      markers.push_back({{"group", "+"}, {"coords", coords_v}});
    }
    for (Eigen::Index r = 0; r < model.markers.negative.rows(); ++r) {
      std::vector<double> coords_v(model.markers.negative.row(r).begin(),
                                   model.markers.negative.row(r).end());
      markers.push_back({{"group", "-"}, {"coords", coords_v}});
    }
    std::ofstream out(fs::path(out_dir) / "markers.json");
    if (!out) throw std::runtime_error("cannot write markers.json under " + out_dir);
    out << markers.dump(2) << "\n";
  }
}

} // namespace smell
