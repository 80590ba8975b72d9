#include "smell/config_io.hpp"

#include <fstream>

namespace smell {

nlohmann::json config_to_json(const TrainConfig& c) {
  return {
      {"r_hc", c.r_hc},
      {"r_d", c.r_d},
      {"r_r", c.r_r},
      {"eps", c.eps},
      {"k_positive", c.k_positive},
      {"k_negative", c.k_negative},
      {"latent_dim", c.latent_dim},
      {"hidden", c.hidden},
      {"learning_rate", c.learning_rate},
      {"momentum", c.momentum},
      {"batch_size", c.batch_size},
      {"pretrain_epochs", c.pretrain_epochs},
      {"joint_epochs", c.joint_epochs},
      {"seed", c.seed},
      {"calibrate_sspace", c.calibrate_sspace},
      {"zero_r_r", c.zero_r_r},
      {"zero_r_d", c.zero_r_d},
      {"euclidean_eval", c.euclidean_eval},
  };
}

TrainConfig config_from_json(const nlohmann::json& j) {
  TrainConfig c;
  c.r_hc = j.value("r_hc", c.r_hc);
  c.r_d = j.value("r_d", c.r_d);
  c.r_r = j.value("r_r", c.r_r);
  c.eps = j.value("eps", c.eps);
  c.k_positive = j.value("k_positive", c.k_positive);
  c.k_negative = j.value("k_negative", c.k_negative);
  c.latent_dim = j.value("latent_dim", c.latent_dim);
  c.hidden = j.value("hidden", c.hidden);
  c.learning_rate = j.value("learning_rate", c.learning_rate);
  c.momentum = j.value("momentum", c.momentum);
  c.batch_size = j.value("batch_size", c.batch_size);
  c.pretrain_epochs = j.value("pretrain_epochs", c.pretrain_epochs);
  c.joint_epochs = j.value("joint_epochs", c.joint_epochs);
  c.seed = j.value("seed", c.seed);
  c.calibrate_sspace = j.value("calibrate_sspace", c.calibrate_sspace);
  c.zero_r_r = j.value("zero_r_r", c.zero_r_r);
  c.zero_r_d = j.value("zero_r_d", c.zero_r_d);
  c.euclidean_eval = j.value("euclidean_eval", c.euclidean_eval);
  return c;
}

TrainConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UserError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw UserError("bad config JSON in " + path + ": " + e.what());
  }
  return config_from_json(j);
}

} // namespace smell
