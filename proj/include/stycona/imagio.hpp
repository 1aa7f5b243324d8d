// Copyright 2026 The StyCona Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stycona/errors.hpp"
#include "stycona/image.hpp"

namespace stycona {

/// Integer class labels, same spatial grid as the paired image.
struct LabelMask {
    int height = 0;
    int width = 0;
    std::vector<uint8_t> labels;  // row-major

    static LabelMask zeros(int height, int width) {
        LabelMask m;
        if (height < 1 || width < 1) throw InvalidInput("LabelMask: dimensions must be positive");
        m.height = height;
        m.width = width;
        m.labels.assign(static_cast<size_t>(height) * width, 0);
        return m;
    }

    uint8_t at(int y, int x) const { return labels[static_cast<size_t>(y) * width + x]; }
    uint8_t& at(int y, int x) { return labels[static_cast<size_t>(y) * width + x]; }

    bool same_shape(const LabelMask& other) const {
        return height == other.height && width == other.width;
    }
};

/// Row-major float32 tensor for lossless interchange (STYC container).
struct TensorF32 {
    std::vector<uint32_t> dims;
    std::vector<float> data;

    size_t element_count() const {
        size_t n = 1;
        for (uint32_t d : dims) n *= d;
        return dims.empty() ? 0 : n;
    }
};

/// Loads a PNG or binary PGM (P5) image, sniffed by magic bytes. Integer
/// samples map linearly to [0, 1] by v / (2^bits - 1); grayscale becomes one
/// channel, color three. Optional corner-aligned bilinear resize.
Image load_image(const std::string& path,
                 std::optional<std::pair<int, int>> target_size = std::nullopt);

/// Clamps to [0, 1], quantizes round-half-up and writes PNG or PGM by
/// extension. bit_depth 16 is supported for single-channel output only.
void save_image(const Image& img, const std::string& path, int bit_depth = 8);

/// Masks are stored as single-channel 8-bit images with raw class indices.
/// If num_classes > 0, any label outside [0, num_classes) is a FormatError.
LabelMask load_mask(const std::string& path, int num_classes = 0);
void save_mask(const LabelMask& mask, const std::string& path);

/// STYC tensor container: magic "STYC", u32 version = 1, u8 dtype (0 =
/// float32), u8 ndim, u32 dims (little-endian), then the row-major
/// little-endian payload. Round-trips are bit-exact.
TensorF32 load_tensor(const std::string& path);
void save_tensor(const TensorF32& tensor, const std::string& path);

/// Corner-aligned bilinear resample. Resizing to the input size is the
/// identity.
Image resize_bilinear(const Image& img, int out_height, int out_width);

/// Nearest-neighbor resample, preserving label integrality.
LabelMask resize_nearest(const LabelMask& mask, int out_height, int out_width);

/// One dataset item: an image file plus an optional "<stem>_mask" companion.
struct DatasetEntry {
    std::string name;        // stem without extension
    std::string image_path;
    std::string mask_path;   // empty when absent
};

struct Dataset {
    std::vector<DatasetEntry> entries;
    std::string domain;
};

/// Lists *.png / *.pgm under dir (non-recursive), pairing "<stem>_mask.*"
/// files with their base image. Entries come back sorted by name.
Dataset scan_directory(const std::string& dir);

/// Loads every image of the dataset, optionally resizing, and checks that
/// the shapes are homogeneous.
std::vector<Image> load_dataset_images(const Dataset& ds,
                                       std::optional<std::pair<int, int>> target_size = std::nullopt);

}  // namespace stycona
