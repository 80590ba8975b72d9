#pragma once

#include <string>

#include "smell/trainer.hpp"

namespace smell {

/// Binary container: magic + version, JSON header describing named tensors
/// and the config snapshot, then raw little-endian doubles.
void save_checkpoint(const TrainedModel& model, const std::string& path);
TrainedModel load_checkpoint(const std::string& path);

} // namespace smell
