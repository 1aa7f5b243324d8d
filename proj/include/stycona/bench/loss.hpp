// Copyright 2026 The StyCona Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "stycona/imagio.hpp"

namespace stycona::bench {

/// Value and gradient of the segmentation criterion: mean pixelwise
/// cross-entropy plus soft Dice loss averaged over classes, evaluated on raw
/// logits (softmax applied internally).
struct SegLoss {
    double total = 0.0;
    double cross_entropy = 0.0;
    double dice = 0.0;
    std::vector<double> grad;  // d total / d logits, same layout as logits
};

/// logits layout: class-planar [c][y][x], length num_classes * H * W.
/// Throws InvalidInput on inconsistent shapes or out-of-range labels.
SegLoss seg_loss(std::span<const double> logits, int num_classes, const LabelMask& mask);

}  // namespace stycona::bench
