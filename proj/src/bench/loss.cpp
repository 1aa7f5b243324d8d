// Copyright 2026 The StyCona Authors
// SPDX-License-Identifier: Apache-2.0

#include "stycona/bench/loss.hpp"

#include <algorithm>
#include <cmath>

namespace stycona::bench {

namespace {
constexpr double kDiceEps = 1e-6;
}

SegLoss seg_loss(std::span<const double> logits, int num_classes, const LabelMask& mask) {
    const size_t npix = static_cast<size_t>(mask.height) * mask.width;
    if (num_classes < 2) throw InvalidInput("seg_loss: need at least 2 classes");
    if (logits.size() != npix * num_classes) {
        throw InvalidInput("seg_loss: logits length does not match classes * H * W");
    }
    for (uint8_t l : mask.labels) {
        if (l >= num_classes) throw InvalidInput("seg_loss: mask label out of range");
    }

    // Softmax probabilities, class-planar like the logits.
    std::vector<double> prob(logits.size());
    for (size_t p = 0; p < npix; ++p) {
        double zmax = logits[p];
        for (int c = 1; c < num_classes; ++c) zmax = std::max(zmax, logits[c * npix + p]);
        double zsum = 0.0;
        for (int c = 0; c < num_classes; ++c) {
            const double e = std::exp(logits[c * npix + p] - zmax);
            prob[c * npix + p] = e;
            zsum += e;
        }
        for (int c = 0; c < num_classes; ++c) prob[c * npix + p] /= zsum;
    }

    SegLoss out;
    out.grad.assign(logits.size(), 0.0);

    // Cross-entropy term and its gradient through the softmax.
    double ce = 0.0;
    const double inv_npix = 1.0 / static_cast<double>(npix);
    for (size_t p = 0; p < npix; ++p) {
        const int y = mask.labels[p];
        ce -= std::log(std::max(prob[y * npix + p], 1e-300));
    }
    out.cross_entropy = ce * inv_npix;

    // Soft Dice per class: (2*intersection + eps) / (|P| + |G| + eps).
    std::vector<double> inter(num_classes, 0.0), psum(num_classes, 0.0), gsum(num_classes, 0.0);
    for (size_t p = 0; p < npix; ++p) {
        const int y = mask.labels[p];
        for (int c = 0; c < num_classes; ++c) {
            const double pc = prob[c * npix + p];
            psum[c] += pc;
            if (c == y) {
                inter[c] += pc;
                gsum[c] += 1.0;
            }
        }
    }
    double dice_mean = 0.0;
    std::vector<double> num(num_classes), den(num_classes);
    for (int c = 0; c < num_classes; ++c) {
        num[c] = 2.0 * inter[c] + kDiceEps;
        den[c] = psum[c] + gsum[c] + kDiceEps;
        dice_mean += num[c] / den[c];
    }
    dice_mean /= num_classes;
    out.dice = 1.0 - dice_mean;
    out.total = out.cross_entropy + out.dice;

    // Gradient w.r.t. probabilities, then chain through the softmax Jacobian:
    // dL/dz_k = p_k * (q_k - sum_c q_c p_c), with q_c = dL/dp_c.
    const double inv_classes = 1.0 / static_cast<double>(num_classes);
    for (size_t p = 0; p < npix; ++p) {
        const int y = mask.labels[p];
        double qdotp = 0.0;
        double q[16];  // stack buffer; desk benchmark uses few classes
        std::vector<double> qheap;
        double* qp = q;
        if (num_classes > 16) {
            qheap.resize(num_classes);
            qp = qheap.data();
        }
        for (int c = 0; c < num_classes; ++c) {
            const double pc = prob[c * npix + p];
            // CE: q_c = -1[c==y] / (p_y * npix)
            double qc = (c == y) ? -inv_npix / std::max(pc, 1e-300) : 0.0;
            // Dice: dD_c/dp_c = (2*g - D_c') with quotient rule; loss is 1 - mean D.
            const double g = (c == y) ? 1.0 : 0.0;
            const double ddice_dp = (2.0 * g * den[c] - num[c]) / (den[c] * den[c]);
            qc += -inv_classes * ddice_dp;
            qp[c] = qc;
            qdotp += qc * pc;
        }
        for (int c = 0; c < num_classes; ++c) {
            const double pc = prob[c * npix + p];
            out.grad[c * npix + p] = pc * (qp[c] - qdotp);
        }
    }
    return out;
}

}  // namespace stycona::bench
