// Copyright 2026 The StyCona Authors
// SPDX-License-Identifier: Apache-2.0

#include "stycona/image.hpp"

#include <algorithm>
#include <cmath>

namespace stycona {

void validate_image(const Image& img) {
    if (img.height < 1 || img.width < 1 || img.channels < 1) {
        throw InvalidInput("Image: dimensions must be positive");
    }
    if (img.pixels.size() != static_cast<size_t>(img.height) * img.width * img.channels) {
        throw InvalidInput("Image: pixel buffer length does not match dimensions");
    }
    for (float v : img.pixels) {
        if (!std::isfinite(v) || v < 0.0f || v > 1.0f) {
            throw InvalidInput("Image: pixels must be finite and within [0, 1]");
        }
    }
}

Matrix channel_matrix(const Image& img, int channel) {
    if (channel < 0 || channel >= img.channels) {
        throw InvalidInput("channel_matrix: channel out of range");
    }
    Matrix m(img.height, img.width);
    const float* src = img.plane(channel);
    for (size_t i = 0; i < img.plane_size(); ++i) m.data()[i] = static_cast<double>(src[i]);
    return m;
}

void set_channel(Image& img, int channel, const Matrix& m, bool clamp) {
    if (channel < 0 || channel >= img.channels) {
        throw InvalidInput("set_channel: channel out of range");
    }
    if (m.rows() != img.height || m.cols() != img.width) {
        throw InvalidInput("set_channel: matrix shape does not match image");
    }
    float* dst = img.plane(channel);
    for (size_t i = 0; i < img.plane_size(); ++i) {
        double v = m.data()[i];
        if (clamp) v = std::clamp(v, 0.0, 1.0);
        dst[i] = static_cast<float>(v);
    }
}

void clamp_unit(Image& img) {
    for (float& v : img.pixels) v = std::clamp(v, 0.0f, 1.0f);
}

double channel_frobenius(const Image& img, int channel) {
    const float* src = img.plane(channel);
    double acc = 0.0;
    for (size_t i = 0; i < img.plane_size(); ++i) {
        acc += static_cast<double>(src[i]) * static_cast<double>(src[i]);
    }
    return std::sqrt(acc);
}

double mean_intensity(const Image& img) {
    double acc = 0.0;
    for (float v : img.pixels) acc += v;
    return img.pixels.empty() ? 0.0 : acc / static_cast<double>(img.pixels.size());
}

double max_abs_diff(const Image& a, const Image& b) {
    if (!a.same_shape(b)) throw InvalidInput("max_abs_diff: image shapes differ");
    double m = 0.0;
    for (size_t i = 0; i < a.pixels.size(); ++i) {
        m = std::max(m, std::abs(static_cast<double>(a.pixels[i]) - static_cast<double>(b.pixels[i])));
    }
    return m;
}

}  // namespace stycona
