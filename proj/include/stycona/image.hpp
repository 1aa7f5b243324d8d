// Copyright 2026 The StyCona Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include "stycona/errors.hpp"
#include "stycona/linalg.hpp"

namespace stycona {

/// Channel-planar image with unit-interval intensities. Storage is 32-bit
/// float; the decomposition pipeline promotes planes to 64-bit matrices.
struct Image {
    int height = 0;
    int width = 0;
    int channels = 0;
    std::vector<float> pixels;  // [c][y][x] planar

    static Image zeros(int height, int width, int channels = 1) {
        Image img;
        if (height < 1 || width < 1 || channels < 1) {
            throw InvalidInput("Image: dimensions must be positive");
        }
        img.height = height;
        img.width = width;
        img.channels = channels;
        img.pixels.assign(static_cast<size_t>(height) * width * channels, 0.0f);
        return img;
    }

    size_t plane_size() const { return static_cast<size_t>(height) * width; }

    float at(int c, int y, int x) const {
        return pixels[static_cast<size_t>(c) * plane_size() + static_cast<size_t>(y) * width + x];
    }
    float& at(int c, int y, int x) {
        return pixels[static_cast<size_t>(c) * plane_size() + static_cast<size_t>(y) * width + x];
    }

    const float* plane(int c) const { return pixels.data() + static_cast<size_t>(c) * plane_size(); }
    float* plane(int c) { return pixels.data() + static_cast<size_t>(c) * plane_size(); }

    bool same_shape(const Image& other) const {
        return height == other.height && width == other.width && channels == other.channels;
    }
};

/// Throws InvalidInput unless all pixels are finite and within [0, 1].
void validate_image(const Image& img);

/// One channel plane promoted to a double matrix.
Matrix channel_matrix(const Image& img, int channel);

/// Writes a double matrix back into one channel, optionally clamping to [0, 1].
void set_channel(Image& img, int channel, const Matrix& m, bool clamp);

void clamp_unit(Image& img);

/// Frobenius norm of one channel plane, accumulated in double.
double channel_frobenius(const Image& img, int channel);

double mean_intensity(const Image& img);

double max_abs_diff(const Image& a, const Image& b);

}  // namespace stycona
