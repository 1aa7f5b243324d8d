// Copyright 2026 The StyCona Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "stycona/image.hpp"
#include "stycona/imagio.hpp"
#include "stycona/rng.hpp"

namespace stycona::bench {

/// Class-planar float tensor used by the segmenter.
struct TensorCHW {
    int c = 0, h = 0, w = 0;
    std::vector<float> v;

    static TensorCHW zeros(int c, int h, int w) {
        TensorCHW t;
        t.c = c;
        t.h = h;
        t.w = w;
        t.v.assign(static_cast<size_t>(c) * h * w, 0.0f);
        return t;
    }
    size_t plane_size() const { return static_cast<size_t>(h) * w; }
    float* plane(int i) { return v.data() + plane_size() * i; }
    const float* plane(int i) const { return v.data() + plane_size() * i; }
};

/// Stride-1, same-padding convolution (kernel 1x1 or 3x3).
struct ConvLayer {
    int in_c = 0, out_c = 0, k = 3;
    std::vector<float> w;  // [out][in][k][k]
    std::vector<float> b;  // [out]

    void init(int in_channels, int out_channels, int kernel, RandomStream& stream);
    void forward(const TensorCHW& in, TensorCHW& out) const;
    /// Accumulates weight/bias gradients; writes input gradient when
    /// grad_in is non-null.
    void backward(const TensorCHW& in, const TensorCHW& grad_out, TensorCHW* grad_in,
                  std::vector<float>& gw, std::vector<float>& gb) const;
    size_t param_count() const { return w.size() + b.size(); }
};

/// Per-layer gradient buffers, in the network's layer order.
struct SegGrads {
    std::vector<std::vector<float>> gw;
    std::vector<std::vector<float>> gb;

    void accumulate(const SegGrads& other);
    void scale(float s);
};

/// Three-level encoder-decoder with additive skip connections and channel
/// widths 8/16/32; a deliberately tiny stand-in for a segmentation U-Net so
/// the whole benchmark runs on a desktop CPU. Input height/width must be
/// divisible by 4.
class Segmenter {
public:
    Segmenter() = default;
    Segmenter(int in_channels, int num_classes);

    void init_params(RandomStream& stream);

    int in_channels() const { return in_c_; }
    int num_classes() const { return classes_; }

    struct Cache {
        TensorCHW x, e1, p1, e2, p2, b3, u2, d2, u1, d1, logits;
        std::vector<int> idx1, idx2;  // maxpool argmax, flat indices
    };

    void forward(const Image& img, Cache& cache) const;
    TensorCHW logits(const Image& img) const;
    LabelMask predict(const Image& img) const;

    void backward(const Cache& cache, std::span<const float> grad_logits, SegGrads& grads) const;

    SegGrads make_grads() const;
    std::vector<ConvLayer>& layers() { return layers_; }
    const std::vector<ConvLayer>& layers() const { return layers_; }

    size_t param_count() const;
    std::vector<float> flatten_params() const;
    void load_params(std::span<const float> params);

    void save(const std::string& path) const;
    static Segmenter load(const std::string& path, int in_channels, int num_classes);

private:
    int in_c_ = 0;
    int classes_ = 0;
    std::vector<ConvLayer> layers_;  // c1, c2, c3, c4, c5, head
};

/// Adam optimizer over the segmenter's parameters.
class Adam {
public:
    Adam(const Segmenter& net, double lr);
    void step(Segmenter& net, const SegGrads& grads);

private:
    double lr_;
    int t_ = 0;
    std::vector<std::vector<float>> mw_, vw_, mb_, vb_;
};

}  // namespace stycona::bench
