// Copyright 2026 The StyCona Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stycona/image.hpp"
#include "stycona/imagio.hpp"

namespace stycona {

/// Dice similarity coefficient for one class, in percent. Undefined (nullopt)
/// when the class is absent from both masks.
std::optional<double> dsc(const LabelMask& pred, const LabelMask& gt, int cls);

/// Average symmetric surface distance for one class, in pixels. A boundary
/// pixel carries the class and has a 4-neighbor of another class or lies on
/// the image edge. Undefined unless both masks contain the class.
std::optional<double> asd(const LabelMask& pred, const LabelMask& gt, int cls);

/// Boundary pixels of one class under the 4-connectivity/image-edge rule,
/// as (y, x) pairs in row-major order.
std::vector<std::pair<int, int>> boundary_pixels(const LabelMask& mask, int cls);

/// Mean per-channel L1 distance between normalized intensity histograms.
/// Ranges over [0, 2]; 0 for identical images, 2 for disjoint histograms.
double histogram_distance(const Image& a, const Image& b, int bins = 64);

/// Euclidean distance between the two images' concatenated per-channel style
/// codes (singular value vectors).
double style_shift(const Image& a, const Image& b);

/// Per-class segmentation metrics plus the domain-shift proxies. Classes
/// absent from both masks report "undefined" and stay out of the means;
/// classes absent from exactly one score DSC 0 with undefined ASD.
struct MetricReport {
    struct ClassMetric {
        int cls = 0;
        std::optional<double> dsc;
        std::optional<double> asd;
    };
    std::vector<ClassMetric> classes;
    std::optional<double> mean_dsc;
    std::optional<double> mean_asd;
    std::optional<double> histogram_dist;
    std::optional<double> style_shift_dist;

    std::string to_json() const;
};

/// DSC/ASD over all foreground classes [1, num_classes).
MetricReport evaluate_masks(const LabelMask& pred, const LabelMask& gt, int num_classes);

}  // namespace stycona
