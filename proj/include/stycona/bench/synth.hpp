// Copyright 2026 The StyCona Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stycona/image.hpp"
#include "stycona/imagio.hpp"

namespace stycona::bench {

/// Recipe for one synthetic domain: random bright ellipses on a darker
/// background. Style knobs (intensity means, noise, gamma) and content knobs
/// (background texture) realize the two components of a domain shift.
struct SynthDomainSpec {
    std::string domain_id = "domain";
    int height = 64;
    int width = 64;

    // Foreground geometry, as fractions of the image size.
    double center_jitter = 0.12;  // ellipse center within 0.5 +/- jitter
    double axis_min = 0.14;
    double axis_max = 0.30;
    double rotation_max = 3.14159265358979323846;

    // Style parameters.
    double fg_mean = 0.75;
    double bg_mean = 0.25;
    double intensity_jitter = 0.05;  // per-image jitter of both means
    double noise_sigma = 0.02;
    double gamma = 1.0;

    // Content parameters.
    enum class Texture { None, Stripes, Blobs } texture = Texture::None;
    double texture_amplitude = 0.0;

    uint64_t seed = 0;

    void validate() const;
};

/// Image + ground-truth mask pair, the unit of the desk benchmark.
struct SegSample {
    Image image;
    LabelMask mask;
};

inline constexpr int kSynthClasses = 2;  // background, ellipse

/// n seed-deterministic samples. Sample i depends only on (spec, i), so a
/// prefix of a longer dataset equals the shorter dataset.
std::vector<SegSample> generate_domain(const SynthDomainSpec& spec, int n);

/// Materializes samples as <name>.png plus <name>_mask.png under dir.
void save_samples(const std::vector<SegSample>& samples, const std::string& dir);

SynthDomainSpec default_source_spec();
SynthDomainSpec default_target_spec();

}  // namespace stycona::bench
