#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(SMELL_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kTinyFlags =
    " --hidden 6 --latent-dim 3 --pretrain-epochs 2 --joint-epochs 2 --batch-size 8";

fs::path temp_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

} // namespace

TEST_CASE("cli: no subcommand and bad flags exit 2") {
  CHECK(run("") == 2);
  CHECK(run("frobnicate") == 2);
  CHECK(run("train") == 2); // --data is required
  CHECK(run("--help") == 0);
}

TEST_CASE("cli: missing data file exits 2 and names the path") {
  const fs::path dir = temp_dir("cli_missing");
  const std::string cmd = std::string(SMELL_CLI_PATH) +
                          " train --data /no/such/file.csv --out " + dir.string() +
                          " 2> " + (dir / "err.txt").string();
  const int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 2);
  CHECK(slurp(dir / "err.txt").find("/no/such/file.csv") != std::string::npos);
}

TEST_CASE("cli: synth then train produces checkpoint, log and manifest") {
  const fs::path dir = temp_dir("cli_train");
  const fs::path data = dir / "data.csv";
  REQUIRE(run("synth --kind two_gaussians --rows 48 --seed 5 --out " + data.string()) == 0);

  const fs::path out = dir / "run1";
  REQUIRE(run("train --data " + data.string() + " --seed 7 --out " + out.string() +
              kTinyFlags) == 0);
  CHECK(fs::exists(out / "checkpoint.bin"));
  CHECK(fs::exists(out / "log.csv"));
  CHECK(fs::exists(out / "manifest.json"));

  // repeated run overwrites byte-identically
  const std::string log1 = slurp(out / "log.csv");
  REQUIRE(run("train --data " + data.string() + " --seed 7 --out " + out.string() +
              kTinyFlags) == 0);
  CHECK(slurp(out / "log.csv") == log1);

  const std::string manifest = slurp(out / "manifest.json");
  CHECK(manifest.find("\"command\": \"train\"") != std::string::npos);
  CHECK(manifest.find("dataset_fingerprint") != std::string::npos);

  // export from the checkpoint
  const fs::path exp = dir / "export";
  REQUIRE(run("export --checkpoint " + (out / "checkpoint.bin").string() + " --data " +
              data.string() + " --pca2 --out " + exp.string()) == 0);
  CHECK(fs::exists(exp / "latent.csv"));
  CHECK(fs::exists(exp / "svectors.csv"));
  CHECK(fs::exists(exp / "markers.json"));
  CHECK(fs::exists(exp / "manifest.json"));
}

TEST_CASE("cli: eval writes per-fold, summary and aggregate tables") {
  const fs::path dir = temp_dir("cli_eval");
  const fs::path data = dir / "data.csv";
  REQUIRE(run("synth --kind two_gaussians --rows 60 --separation 6 --seed 5 --out " +
              data.string()) == 0);

  const fs::path out = dir / "eval";
  REQUIRE(run("eval --data " + data.string() +
              " --methods smell,raw_euclidean --seed 3 --out " + out.string() +
              kTinyFlags) == 0);

  const std::string results = slurp(out / "results.csv");
  CHECK(results.rfind("dataset,method,fold,accuracy\n", 0) == 0);
  // 2 methods x 10 folds + header
  CHECK(std::count(results.begin(), results.end(), '\n') == 21);

  const std::string summary = slurp(out / "summary.csv");
  CHECK(std::count(summary.begin(), summary.end(), '\n') == 3);
  CHECK(summary.find("data,smell,") != std::string::npos);
  CHECK(summary.find("data,raw_euclidean,") != std::string::npos);

  const std::string agg = slurp(out / "aggregate.csv");
  CHECK(agg.rfind("method,accuracy_avg,ranking_avg,diff_avg,firsts\n", 0) == 0);
  CHECK(std::count(agg.begin(), agg.end(), '\n') == 3);
}

TEST_CASE("cli: risk grid emits the consistency table") {
  const fs::path dir = temp_dir("cli_risk");
  const fs::path out = dir / "risk.csv";
  REQUIRE(run("risk --dplus 1.5 --dminus 2 --grid --out " + out.string()) == 0);
  const std::string table = slurp(out);
  CHECK(table.rfind("d_plus,d_minus,closed_form,numerical,abs_diff,flag\n", 0) == 0);
  CHECK(std::count(table.begin(), table.end(), '\n') == 26); // header + 5x5
}
