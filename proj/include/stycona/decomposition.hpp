// Copyright 2026 The StyCona Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <utility>
#include <vector>

#include "stycona/image.hpp"
#include "stycona/linalg.hpp"

namespace stycona {

/// Style/content view of an image: per channel, the singular values are the
/// style code and the singular-vector pairs span the content maps. Channels
/// are decomposed independently.
struct StyleContent {
    int height = 0;
    int width = 0;
    int channels = 0;
    std::vector<SvdFactors> factors;  // one per channel

    int k() const { return factors.empty() ? 0 : factors.front().k(); }

    /// Concatenation of the per-channel style codes (length channels * k).
    std::vector<double> style_code() const;
};

StyleContent decompose(const Image& img);

/// Rebuilds the image from (possibly modified) factors.
Image compose(const StyleContent& sc, bool clamp = true);

/// Exchanges the two images' style codes and reconstructs both. Output pixel
/// values are clamped to [0, 1] unless clamp is false (test/diagnostic use).
std::pair<Image, Image> style_swap(const Image& a, const Image& b, bool clamp = true);

/// Scaled content maps sigma[r] * u[:,r] v[:,r]^T for the requested indices.
std::vector<Matrix> content_maps(const StyleContent& sc, int channel,
                                 std::span<const int> indices);

}  // namespace stycona
