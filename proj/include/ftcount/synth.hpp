#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ftcount/raster.hpp"

namespace ftc {

// Deterministic synthetic photomicrograph: dark capsule-shaped tracks on a
// bright noisy background, with exact ground truth.
struct SynthSpec {
    int width = 512;
    int height = 512;
    int n_tracks = 12;
    double min_length = 25.0, max_length = 60.0;  // axis length, px
    double min_width = 7.0, max_width = 10.0;     // capsule width, px
    double overlap_prob = 0.0;     // chance each later track crosses an earlier one
    int forced_crossings = 0;      // crossing pairs constructed unconditionally
    int background = 200;
    int track_intensity = 60;
    int noise_amp = 10;            // uniform +- amplitude
    std::uint64_t seed = 0;
};

struct SynthResult {
    GrayImage image;
    int n_tracks = 0;
    std::vector<std::pair<PixelCoord, PixelCoord>> endpoints;  // per-track axis ends
};

SynthResult generate(const SynthSpec& spec);

}  // namespace ftc
