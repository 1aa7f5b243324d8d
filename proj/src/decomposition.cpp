// Copyright 2026 The StyCona Authors
// SPDX-License-Identifier: Apache-2.0

#include "stycona/decomposition.hpp"

namespace stycona {

std::vector<double> StyleContent::style_code() const {
    std::vector<double> code;
    code.reserve(static_cast<size_t>(channels) * k());
    for (const auto& f : factors) code.insert(code.end(), f.sigma.begin(), f.sigma.end());
    return code;
}

StyleContent decompose(const Image& img) {
    validate_image(img);
    StyleContent sc;
    sc.height = img.height;
    sc.width = img.width;
    sc.channels = img.channels;
    sc.factors.reserve(img.channels);
    for (int c = 0; c < img.channels; ++c) {
        sc.factors.push_back(svd(channel_matrix(img, c)));
    }
    return sc;
}

Image compose(const StyleContent& sc, bool clamp) {
    Image out = Image::zeros(sc.height, sc.width, sc.channels);
    for (int c = 0; c < sc.channels; ++c) {
        set_channel(out, c, reconstruct(sc.factors[c]), clamp);
    }
    return out;
}

std::pair<Image, Image> style_swap(const Image& a, const Image& b, bool clamp) {
    if (!a.same_shape(b)) throw InvalidInput("style_swap: image shapes differ");
    StyleContent sa = decompose(a);
    StyleContent sb = decompose(b);
    for (int c = 0; c < sa.channels; ++c) {
        std::swap(sa.factors[c].sigma, sb.factors[c].sigma);
    }
    return {compose(sa, clamp), compose(sb, clamp)};
}

std::vector<Matrix> content_maps(const StyleContent& sc, int channel,
                                 std::span<const int> indices) {
    if (channel < 0 || channel >= sc.channels) {
        throw InvalidInput("content_maps: channel out of range");
    }
    const SvdFactors& f = sc.factors[channel];
    std::vector<Matrix> maps;
    maps.reserve(indices.size());
    for (int r : indices) {
        if (r < 0 || r >= f.k()) throw InvalidInput("content_maps: index out of range");
        Matrix m = rank_one(f, r);
        const double s = f.sigma[r];
        for (size_t i = 0; i < m.size(); ++i) m.data()[i] *= s;
        maps.push_back(std::move(m));
    }
    return maps;
}

}  // namespace stycona
