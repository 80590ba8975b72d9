#pragma once

#include <cstdint>
#include <string>

#include "smell/dataset.hpp"

namespace smell {

/// Two separable 2-D Gaussian blobs, one per class.
Dataset synth_two_gaussians(int rows, double separation, double noise, std::uint64_t seed);

/// Class 1 in two clusters flanking class 2 along the first axis.
Dataset synth_disjoint_regions(int rows, double separation, double noise, std::uint64_t seed);

/// Class 1 is a central disk, class 2 a surrounding ring.
Dataset synth_ring_disk(int rows, double ring_radius, double noise, std::uint64_t seed);

void write_dataset_csv(const Dataset& d, const std::string& path);

} // namespace smell
