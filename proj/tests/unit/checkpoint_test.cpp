#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "smell/checkpoint.hpp"
#include "smell/synth.hpp"

using namespace smell;

namespace {

TrainedModel make_model() {
  const Dataset d = synth_two_gaussians(40, 4.0, 0.5, 2);
  const FoldPlan plan = make_folds(d, 2);
  TrainConfig c;
  c.hidden = {6};
  c.latent_dim = 3;
  c.batch_size = 8;
  c.pretrain_epochs = 2;
  c.joint_epochs = 2;
  c.seed = 5;
  return train(d, plan, -1, c);
}

} // namespace

TEST_CASE("checkpoint round-trips parameters, markers and config") {
  const TrainedModel m = make_model();
  const auto path = (std::filesystem::temp_directory_path() / "ckpt_roundtrip.bin").string();
  save_checkpoint(m, path);
  const TrainedModel r = load_checkpoint(path);

  REQUIRE(r.params.encoder.layers.size() == m.params.encoder.layers.size());
  for (std::size_t l = 0; l < m.params.encoder.layers.size(); ++l) {
    CHECK(r.params.encoder.layers[l].weight == m.params.encoder.layers[l].weight);
    CHECK(r.params.encoder.layers[l].bias == m.params.encoder.layers[l].bias);
    CHECK(r.params.decoder.layers[l].weight == m.params.decoder.layers[l].weight);
  }
  CHECK(r.markers.positive == m.markers.positive);
  CHECK(r.markers.negative == m.markers.negative);
  CHECK(r.config.latent_dim == m.config.latent_dim);
  CHECK(r.config.hidden == m.config.hidden);
  CHECK(r.config.seed == m.config.seed);
  CHECK(r.config.r_d == doctest::Approx(m.config.r_d));
}

TEST_CASE("checkpoint rejects garbage and truncation") {
  CHECK_THROWS_AS(load_checkpoint("/nonexistent/x.bin"), UserError);

  const auto bad = (std::filesystem::temp_directory_path() / "ckpt_bad.bin").string();
  std::ofstream(bad) << "definitely not a checkpoint";
  CHECK_THROWS_AS(load_checkpoint(bad), UserError);

  const TrainedModel m = make_model();
  const auto path = (std::filesystem::temp_directory_path() / "ckpt_trunc.bin").string();
  save_checkpoint(m, path);
  const auto size = std::filesystem::file_size(path);
  std::filesystem::resize_file(path, size / 2);
  CHECK_THROWS_AS(load_checkpoint(path), UserError);
}
