// Copyright 2026 The StyCona Authors
// SPDX-License-Identifier: Apache-2.0

#include "stycona/bench/synth.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "stycona/rng.hpp"

namespace stycona::bench {

namespace {

constexpr double kPi = 3.14159265358979323846;

double texture_value(SynthDomainSpec::Texture kind, double y, double x,
                     const std::vector<double>& params) {
    switch (kind) {
        case SynthDomainSpec::Texture::None:
            return 0.0;
        case SynthDomainSpec::Texture::Stripes: {
            // params: angle, period (pixels), phase
            const double along = x * std::cos(params[0]) + y * std::sin(params[0]);
            return std::sin(2.0 * kPi * along / params[1] + params[2]);
        }
        case SynthDomainSpec::Texture::Blobs: {
            // params: flat list of (cy, cx, radius, sign) per blob
            double acc = 0.0;
            for (size_t b = 0; b + 3 < params.size(); b += 4) {
                const double dy = y - params[b];
                const double dx = x - params[b + 1];
                const double r2 = params[b + 2] * params[b + 2];
                acc += params[b + 3] * std::exp(-(dy * dy + dx * dx) / (2.0 * r2));
            }
            return std::clamp(acc, -1.0, 1.0);
        }
    }
    return 0.0;
}

}  // namespace

void SynthDomainSpec::validate() const {
    if (height < 8 || width < 8) throw InvalidInput("SynthDomainSpec: image size too small");
    if (axis_min <= 0.0 || axis_max < axis_min || axis_max > 0.5) {
        throw InvalidInput("SynthDomainSpec: degenerate ellipse axis range");
    }
    if (center_jitter < 0.0 || center_jitter > 0.4) {
        throw InvalidInput("SynthDomainSpec: center jitter out of range");
    }
    if (noise_sigma < 0.0 || texture_amplitude < 0.0 || gamma <= 0.0) {
        throw InvalidInput("SynthDomainSpec: style parameters out of range");
    }
}

std::vector<SegSample> generate_domain(const SynthDomainSpec& spec, int n) {
    spec.validate();
    if (n < 1) throw InvalidInput("generate_domain: n must be at least 1");

    std::vector<SegSample> samples;
    samples.reserve(n);
    const double size = std::min(spec.height, spec.width);

    for (int i = 0; i < n; ++i) {
        RandomStream stream = RandomStream::substream(spec.seed, static_cast<uint64_t>(i));

        const double cy = spec.height * (0.5 + spec.center_jitter * (2.0 * stream.next_double() - 1.0));
        const double cx = spec.width * (0.5 + spec.center_jitter * (2.0 * stream.next_double() - 1.0));
        const double ay = size * stream.next_uniform(spec.axis_min, spec.axis_max);
        const double ax = size * stream.next_uniform(spec.axis_min, spec.axis_max);
        const double theta = stream.next_uniform(0.0, spec.rotation_max);
        const double ct = std::cos(theta), st = std::sin(theta);

        const double fg = spec.fg_mean + spec.intensity_jitter * (2.0 * stream.next_double() - 1.0);
        const double bg = spec.bg_mean + spec.intensity_jitter * (2.0 * stream.next_double() - 1.0);

        std::vector<double> tex_params;
        if (spec.texture == SynthDomainSpec::Texture::Stripes) {
            tex_params = {stream.next_uniform(0.0, kPi), stream.next_uniform(5.0, 12.0),
                          stream.next_uniform(0.0, 2.0 * kPi)};
        } else if (spec.texture == SynthDomainSpec::Texture::Blobs) {
            const int blobs = 4 + static_cast<int>(stream.next_below(4));
            for (int b = 0; b < blobs; ++b) {
                tex_params.push_back(stream.next_uniform(0.0, spec.height));
                tex_params.push_back(stream.next_uniform(0.0, spec.width));
                tex_params.push_back(stream.next_uniform(2.0, 6.0));
                tex_params.push_back(stream.next_coin(0.5) ? 1.0 : -1.0);
            }
        }

        SegSample sample;
        sample.image = Image::zeros(spec.height, spec.width, 1);
        sample.mask = LabelMask::zeros(spec.height, spec.width);

        for (int y = 0; y < spec.height; ++y) {
            for (int x = 0; x < spec.width; ++x) {
                const double dy = y - cy, dx = x - cx;
                const double ry = (ct * dx + st * dy) / ax;
                const double rx = (-st * dx + ct * dy) / ay;
                const bool inside = ry * ry + rx * rx <= 1.0;
                sample.mask.at(y, x) = inside ? 1 : 0;

                double v = inside ? fg : bg;
                if (!inside && spec.texture != SynthDomainSpec::Texture::None) {
                    v += spec.texture_amplitude * texture_value(spec.texture, y, x, tex_params);
                }
                v += spec.noise_sigma * stream.next_gaussian();
                v = std::clamp(v, 0.0, 1.0);
                v = std::pow(v, spec.gamma);
                sample.image.at(0, y, x) = static_cast<float>(v);
            }
        }
        samples.push_back(std::move(sample));
    }
    return samples;
}

void save_samples(const std::vector<SegSample>& samples, const std::string& dir) {
    std::filesystem::create_directories(dir);
    char name[32];
    for (size_t i = 0; i < samples.size(); ++i) {
        std::snprintf(name, sizeof(name), "sample_%03zu", i);
        save_image(samples[i].image, dir + "/" + name + ".png");
        save_mask(samples[i].mask, dir + "/" + name + "_mask.png");
    }
}

SynthDomainSpec default_source_spec() {
    SynthDomainSpec spec;
    spec.domain_id = "source";
    spec.fg_mean = 0.78;
    spec.bg_mean = 0.22;
    spec.intensity_jitter = 0.05;
    spec.noise_sigma = 0.02;
    spec.gamma = 1.0;
    spec.texture = SynthDomainSpec::Texture::None;
    spec.texture_amplitude = 0.0;
    spec.seed = 2001;
    return spec;
}

SynthDomainSpec default_target_spec() {
    SynthDomainSpec spec;
    spec.domain_id = "target";
    spec.fg_mean = 0.55;
    spec.bg_mean = 0.38;
    spec.intensity_jitter = 0.05;
    spec.noise_sigma = 0.03;
    spec.gamma = 1.7;
    spec.texture = SynthDomainSpec::Texture::Stripes;
    spec.texture_amplitude = 0.12;
    spec.seed = 2002;
    return spec;
}

}  // namespace stycona::bench
