#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "smell/trainer.hpp"

namespace smell {

nlohmann::json config_to_json(const TrainConfig& config);
TrainConfig config_from_json(const nlohmann::json& j);
TrainConfig load_config(const std::string& path);

} // namespace smell
