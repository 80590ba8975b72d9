// Command-line front end for the smell library.
//
// Subcommands: train, eval, ablate, export, risk, synth. Exit codes:
// 0 success, 1 internal error, 2 user error (bad flags, unreadable input).

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "smell/checkpoint.hpp"
#include "smell/config_io.hpp"
#include "smell/dataset.hpp"
#include "smell/embedding_export.hpp"
#include "smell/evaluation.hpp"
#include "smell/manifest.hpp"
#include "smell/risk.hpp"
#include "smell/synth.hpp"
#include "smell/trainer.hpp"

namespace fs = std::filesystem;
using namespace smell;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw UserError("cannot write " + path.string());
  return out;
}

// Flags shared by every subcommand that trains a model. A JSON config file
// provides the base values; explicit flags override it.
struct ConfigFlags {
  std::string config_path;
  CLI::App* app = nullptr;
  std::map<std::string, double> doubles;
  std::map<std::string, long long> ints;

  void attach(CLI::App& cmd) {
    app = &cmd;
    cmd.add_option("--config", config_path, "JSON config file with training parameters");
    cmd.add_option("--seed", ints["seed"], "RNG seed");
    cmd.add_option("--latent-dim", ints["latent_dim"], "latent dimension n");
    cmd.add_option("--batch-size", ints["batch_size"], "pairs per gradient step");
    cmd.add_option("--pretrain-epochs", ints["pretrain_epochs"], "autoencoder warmup epochs");
    cmd.add_option("--joint-epochs", ints["joint_epochs"], "joint training epochs");
    cmd.add_option("--k-positive", ints["k_positive"], "number of positive markers");
    cmd.add_option("--k-negative", ints["k_negative"], "number of negative markers");
    cmd.add_option("--learning-rate", doubles["learning_rate"], "SGD learning rate");
    cmd.add_option("--momentum", doubles["momentum"], "SGD momentum");
    cmd.add_option("--r-d", doubles["r_d"], "repulsive regularizer weight");
    cmd.add_option("--r-r", doubles["r_r"], "reconstruction regularizer weight");
    cmd.add_option("--hidden", hidden_, "hidden layer widths, e.g. 512,512,2048")
        ->delimiter(',');
  }

  TrainConfig resolve() const {
    TrainConfig c;
    if (!config_path.empty()) c = load_config(config_path);
    auto maybe_i = [&](const char* flag, const char* key, auto& field) {
      if (app->count(flag)) field = static_cast<std::decay_t<decltype(field)>>(ints.at(key));
    };
    maybe_i("--seed", "seed", c.seed);
    maybe_i("--latent-dim", "latent_dim", c.latent_dim);
    maybe_i("--batch-size", "batch_size", c.batch_size);
    maybe_i("--pretrain-epochs", "pretrain_epochs", c.pretrain_epochs);
    maybe_i("--joint-epochs", "joint_epochs", c.joint_epochs);
    maybe_i("--k-positive", "k_positive", c.k_positive);
    maybe_i("--k-negative", "k_negative", c.k_negative);
    if (app->count("--learning-rate")) c.learning_rate = doubles.at("learning_rate");
    if (app->count("--momentum")) c.momentum = doubles.at("momentum");
    if (app->count("--r-d")) c.r_d = doubles.at("r_d");
    if (app->count("--r-r")) c.r_r = doubles.at("r_r");
    if (app->count("--hidden")) c.hidden = hidden_;
    c.validate();
    return c;
  }

private:
  std::vector<int> hidden_;
};

Dataset load_for_run(const std::string& path, bool no_header, double downsample_fraction,
                     std::uint64_t seed) {
  CsvOptions opts;
  opts.has_header = !no_header;
  Dataset d = load_csv(path, opts);
  d = minmax_normalize(d);
  if (downsample_fraction < 1.0) d = downsample(d, downsample_fraction, seed);
  return d;
}

RunManifest base_manifest(const std::string& command, const TrainConfig& config,
                          const std::string& data_path) {
  RunManifest m;
  m.command = command;
  m.config = config_to_json(config);
  m.dataset_path = data_path;
  if (!data_path.empty()) m.dataset_fingerprint = file_fingerprint(data_path);
  m.seed = config.seed;
  m.tool_version = SMELL_VERSION;
  return m;
}

void write_log_csv(const std::vector<StepLog>& log, const fs::path& path) {
  auto out = open_out(path);
  out << "step,h_c,r_r_term,r_d_term,total\n";
  for (const auto& s : log) {
    out << s.step << "," << fmt(s.loss.h_c) << "," << fmt(s.loss.r_r_term) << ","
        << fmt(s.loss.r_d_term) << "," << fmt(s.loss.total) << "\n";
  }
}

MetricKind parse_metric(const std::string& name) {
  if (name == "smell") return MetricKind::smell;
  if (name == "smell_euclidean") return MetricKind::smell_euclidean;
  if (name == "raw_euclidean") return MetricKind::raw_euclidean;
  throw UserError("unknown method: " + name);
}

int cmd_train(const std::string& data_path, bool no_header, double downsample_fraction,
              const ConfigFlags& cf, const std::string& out_dir) {
  const TrainConfig config = cf.resolve();
  const Dataset d = load_for_run(data_path, no_header, downsample_fraction, config.seed);
  const FoldPlan plan = make_folds(d, config.seed);
  const TrainedModel model = train(d, plan, /*test_fold=*/-1, config);

  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  save_checkpoint(model, (dir / "checkpoint.bin").string());
  write_log_csv(model.log, dir / "log.csv");

  RunManifest m = base_manifest("train", config, data_path);
  m.outputs = {"checkpoint.bin", "log.csv"};
  write_manifest(m, out_dir);
  std::cout << "trained on " << d.rows() << " rows, final loss "
            << (model.log.empty() ? 0.0 : model.log.back().loss.total) << "\n";
  return 0;
}

int cmd_eval(const std::vector<std::string>& data_paths, bool no_header,
             double downsample_fraction, const std::vector<std::string>& methods,
             const ConfigFlags& cf, const std::string& out_dir) {
  const TrainConfig config = cf.resolve();
  std::vector<MetricKind> kinds;
  for (const auto& m : methods) kinds.push_back(parse_metric(m));

  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  auto results = open_out(dir / "results.csv");
  results << "dataset,method,fold,accuracy\n";
  auto summary = open_out(dir / "summary.csv");
  summary << "dataset,method,mean,stddev\n";

  std::vector<std::string> dataset_names, method_names;
  for (MetricKind k : kinds) method_names.push_back(metric_name(k));
  std::vector<std::vector<double>> mean_table;

  for (const auto& path : data_paths) {
    const Dataset d = load_for_run(path, no_header, downsample_fraction, config.seed);
    const auto per_kind = cross_validate_multi(d, config, kinds);
    dataset_names.push_back(d.name);
    mean_table.emplace_back();
    for (std::size_t k = 0; k < kinds.size(); ++k) {
      MethodScores scores;
      scores.method = method_names[k];
      for (const auto& fold : per_kind[k]) {
        results << d.name << "," << scores.method << "," << fold.fold << ","
                << fmt(fold.accuracy) << "\n";
        scores.fold_accuracies.push_back(fold.accuracy);
      }
      summary << d.name << "," << scores.method << "," << fmt(scores.mean()) << ","
              << fmt(scores.stddev()) << "\n";
      mean_table.back().push_back(scores.mean());
      std::cout << d.name << " " << scores.method << " mean=" << scores.mean() << "\n";
    }
  }

  const BenchmarkSummary bench = aggregate(dataset_names, method_names, mean_table);
  auto agg_out = open_out(dir / "aggregate.csv");
  agg_out << "method,accuracy_avg,ranking_avg,diff_avg,firsts\n";
  for (const auto& a : bench.methods) {
    agg_out << a.method << "," << fmt(a.accuracy_avg) << "," << fmt(a.ranking_avg) << ","
            << fmt(a.diff_avg) << "," << a.firsts << "\n";
  }

  RunManifest m = base_manifest("eval", config,
                                data_paths.size() == 1 ? data_paths.front() : "");
  m.outputs = {"results.csv", "summary.csv", "aggregate.csv"};
  write_manifest(m, out_dir);
  return 0;
}

int cmd_ablate(const std::string& data_path, bool no_header, double downsample_fraction,
               const ConfigFlags& cf, const std::string& out_dir) {
  const TrainConfig config = cf.resolve();
  const Dataset d = load_for_run(data_path, no_header, downsample_fraction, config.seed);
  const auto scores = run_ablations(d, config);

  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  auto results = open_out(dir / "results.csv");
  results << "dataset,method,fold,accuracy\n";
  auto summary = open_out(dir / "summary.csv");
  summary << "dataset,method,mean,stddev\n";
  for (const auto& s : scores) {
    for (std::size_t f = 0; f < s.fold_accuracies.size(); ++f) {
      results << d.name << "," << s.method << "," << f << "," << fmt(s.fold_accuracies[f])
              << "\n";
    }
    summary << d.name << "," << s.method << "," << fmt(s.mean()) << "," << fmt(s.stddev())
            << "\n";
    std::cout << d.name << " " << s.method << " mean=" << s.mean() << "\n";
  }

  RunManifest m = base_manifest("ablate", config, data_path);
  m.outputs = {"results.csv", "summary.csv"};
  write_manifest(m, out_dir);
  return 0;
}

int cmd_export(const std::string& checkpoint_path, const std::string& data_path,
               bool no_header, const std::string& out_dir, bool with_pca2) {
  const TrainedModel model = load_checkpoint(checkpoint_path);
  const Dataset d = load_for_run(data_path, no_header, 1.0, model.config.seed);
  export_embeddings(model, d, out_dir, with_pca2);

  RunManifest m = base_manifest("export", model.config, data_path);
  m.outputs = {"latent.csv", "svectors.csv", "markers.json"};
  write_manifest(m, out_dir);
  return 0;
}

int cmd_risk(double d_plus, double d_minus, bool grid, const std::string& out_path) {
  std::vector<RiskInput> inputs;
  if (grid) {
    for (int i = 1; i <= 5; ++i) {
      for (int j = 1; j <= 5; ++j) {
        inputs.push_back({d_plus * i / 5.0, d_minus * j / 5.0});
      }
    }
  } else {
    inputs.push_back({d_plus, d_minus});
  }
  const auto report = risk_consistency_report(inputs);

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!out_path.empty()) {
    file = open_out(out_path);
    out = &file;
  }
  *out << "d_plus,d_minus,closed_form,numerical,abs_diff,flag\n";
  for (const auto& r : report) {
    *out << fmt(r.d_plus) << "," << fmt(r.d_minus) << "," << fmt(r.closed_form) << ","
         << fmt(r.numerical) << "," << fmt(r.abs_diff) << "," << (r.mismatch ? 1 : 0)
         << "\n";
  }
  return 0;
}

int cmd_synth(const std::string& kind, int rows, double separation, double noise,
              double ring_radius, std::uint64_t seed, const std::string& out_path) {
  Dataset d;
  if (kind == "two_gaussians") {
    d = synth_two_gaussians(rows, separation, noise, seed);
  } else if (kind == "disjoint_regions") {
    d = synth_disjoint_regions(rows, separation, noise, seed);
  } else if (kind == "ring_disk") {
    d = synth_ring_disk(rows, ring_radius, noise, seed);
  } else {
    throw UserError("unknown synth kind: " + kind);
  }
  if (fs::path(out_path).has_parent_path()) {
    fs::create_directories(fs::path(out_path).parent_path());
  }
  write_dataset_csv(d, out_path);
  std::cout << "wrote " << d.rows() << " rows to " << out_path << "\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"smell: supervised metric learning with markers in similarity space"};
  app.require_subcommand(1);
  app.set_version_flag("--version", SMELL_VERSION);

  std::string data_path, out_dir = "out", checkpoint_path;
  std::vector<std::string> data_paths;
  std::string data_dir;
  bool no_header = false, with_pca2 = false, grid = false;
  double downsample_fraction = 1.0;
  std::vector<std::string> methods = {"smell", "smell_euclidean", "raw_euclidean"};
  double d_plus = 1.0, d_minus = 2.0;
  std::string synth_kind = "two_gaussians", synth_out = "synth.csv";
  int synth_rows = 300;
  double synth_sep = 4.0, synth_noise = 0.5, synth_ring = 3.0;
  std::uint64_t synth_seed = 0;

  ConfigFlags train_cf, eval_cf, ablate_cf;

  auto* train_cmd = app.add_subcommand("train", "Train a model on a full dataset");
  train_cmd->add_option("--data", data_path, "dataset CSV")->required();
  train_cmd->add_flag("--no-header", no_header, "dataset CSV has no header row");
  train_cmd->add_option("--downsample", downsample_fraction, "stratified row fraction");
  train_cmd->add_option("--out", out_dir, "output directory");
  train_cf.attach(*train_cmd);

  auto* eval_cmd = app.add_subcommand("eval", "10-fold cross-validated KNN evaluation");
  eval_cmd->add_option("--data", data_paths, "dataset CSV (repeatable)");
  eval_cmd->add_option("--data-dir", data_dir, "directory of dataset CSVs");
  eval_cmd->add_flag("--no-header", no_header, "dataset CSVs have no header row");
  eval_cmd->add_option("--downsample", downsample_fraction, "stratified row fraction");
  eval_cmd->add_option("--methods", methods, "comma-separated metric kinds")->delimiter(',');
  eval_cmd->add_option("--out", out_dir, "output directory");
  eval_cf.attach(*eval_cmd);

  auto* ablate_cmd = app.add_subcommand("ablate", "Regularizer ablation study");
  ablate_cmd->add_option("--data", data_path, "dataset CSV")->required();
  ablate_cmd->add_flag("--no-header", no_header, "dataset CSV has no header row");
  ablate_cmd->add_option("--downsample", downsample_fraction, "stratified row fraction");
  ablate_cmd->add_option("--out", out_dir, "output directory");
  ablate_cf.attach(*ablate_cmd);

  auto* export_cmd = app.add_subcommand("export", "Export embeddings from a checkpoint");
  export_cmd->add_option("--checkpoint", checkpoint_path, "checkpoint file")->required();
  export_cmd->add_option("--data", data_path, "dataset CSV")->required();
  export_cmd->add_flag("--no-header", no_header, "dataset CSV has no header row");
  export_cmd->add_flag("--pca2", with_pca2, "add 2-D PCA coordinates");
  export_cmd->add_option("--out", out_dir, "output directory");

  auto* risk_cmd = app.add_subcommand("risk", "Single-marker risk consistency report");
  risk_cmd->add_option("--dplus", d_plus, "positive marker distance D+");
  risk_cmd->add_option("--dminus", d_minus, "negative marker distance D-");
  risk_cmd->add_flag("--grid", grid, "sweep a 5x5 grid up to (D+, D-)");
  std::string risk_out;
  risk_cmd->add_option("--out", risk_out, "output CSV (default: stdout)");

  auto* synth_cmd = app.add_subcommand("synth", "Generate a seeded synthetic dataset");
  synth_cmd->add_option("--kind", synth_kind, "two_gaussians|disjoint_regions|ring_disk");
  synth_cmd->add_option("--rows", synth_rows, "number of rows");
  synth_cmd->add_option("--separation", synth_sep, "cluster separation");
  synth_cmd->add_option("--noise", synth_noise, "noise scale");
  synth_cmd->add_option("--ring-radius", synth_ring, "ring radius (ring_disk only)");
  synth_cmd->add_option("--seed", synth_seed, "RNG seed");
  synth_cmd->add_option("--out", synth_out, "output CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (train_cmd->parsed()) {
      return cmd_train(data_path, no_header, downsample_fraction, train_cf, out_dir);
    }
    if (eval_cmd->parsed()) {
      if (!data_dir.empty()) {
        std::vector<std::string> found;
        for (const auto& entry : fs::directory_iterator(data_dir)) {
          if (entry.path().extension() == ".csv") found.push_back(entry.path().string());
        }
        std::sort(found.begin(), found.end());
        data_paths.insert(data_paths.end(), found.begin(), found.end());
      }
      if (data_paths.empty()) throw UserError("eval: no datasets given (--data/--data-dir)");
      return cmd_eval(data_paths, no_header, downsample_fraction, methods, eval_cf, out_dir);
    }
    if (ablate_cmd->parsed()) {
      return cmd_ablate(data_path, no_header, downsample_fraction, ablate_cf, out_dir);
    }
    if (export_cmd->parsed()) {
      return cmd_export(checkpoint_path, data_path, no_header, out_dir, with_pca2);
    }
    if (risk_cmd->parsed()) {
      return cmd_risk(d_plus, d_minus, grid, risk_out);
    }
    if (synth_cmd->parsed()) {
      return cmd_synth(synth_kind, synth_rows, synth_sep, synth_noise, synth_ring,
                       synth_seed, synth_out);
    }
  } catch (const UserError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
