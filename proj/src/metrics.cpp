// Copyright 2026 The StyCona Authors
// SPDX-License-Identifier: Apache-2.0

#include "stycona/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "stycona/decomposition.hpp"

namespace stycona {

std::optional<double> dsc(const LabelMask& pred, const LabelMask& gt, int cls) {
    if (!pred.same_shape(gt)) throw InvalidInput("dsc: mask shapes differ");
    size_t p = 0, g = 0, both = 0;
    for (size_t i = 0; i < pred.labels.size(); ++i) {
        const bool in_p = pred.labels[i] == cls;
        const bool in_g = gt.labels[i] == cls;
        p += in_p;
        g += in_g;
        both += in_p && in_g;
    }
    if (p + g == 0) return std::nullopt;
    return 100.0 * 2.0 * static_cast<double>(both) / static_cast<double>(p + g);
}

std::vector<std::pair<int, int>> boundary_pixels(const LabelMask& mask, int cls) {
    std::vector<std::pair<int, int>> out;
    const int h = mask.height, w = mask.width;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (mask.at(y, x) != cls) continue;
            const bool edge = y == 0 || y == h - 1 || x == 0 || x == w - 1;
            const bool exposed = edge || mask.at(y - 1, x) != cls || mask.at(y + 1, x) != cls ||
                                 mask.at(y, x - 1) != cls || mask.at(y, x + 1) != cls;
            if (exposed) out.emplace_back(y, x);
        }
    }
    return out;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// One-dimensional squared-distance transform over a sampled function
// (lower envelope of parabolas). d[i] = min_j (f[j] + (i - j)^2).
void dt_1d(const std::vector<double>& f, std::vector<double>& d, int n) {
    std::vector<int> v(n);
    std::vector<double> z(n + 1);
    int k = 0;
    v[0] = 0;
    z[0] = -kInf;
    z[1] = kInf;
    for (int q = 1; q < n; ++q) {
        if (f[q] == kInf) continue;
        double s;
        for (;;) {
            if (f[v[k]] == kInf) {
                // No finite parabola yet; this one takes over everywhere.
                if (k == 0) {
                    v[0] = q;
                    z[0] = -kInf;
                    z[1] = kInf;
                    break;
                }
                --k;
                continue;
            }
            s = ((f[q] + q * q) - (f[v[k]] + v[k] * v[k])) / (2.0 * q - 2.0 * v[k]);
            if (s <= z[k]) {
                --k;
            } else {
                ++k;
                v[k] = q;
                z[k] = s;
                z[k + 1] = kInf;
                break;
            }
        }
    }
    int k2 = 0;
    for (int q = 0; q < n; ++q) {
        while (z[k2 + 1] < q) ++k2;
        d[q] = f[v[k2]] == kInf ? kInf : (q - v[k2]) * (q - v[k2]) + f[v[k2]];
    }
}

// Exact Euclidean squared-distance field to the given seed pixels
// (Felzenszwalb-Huttenlocher two-pass transform).
std::vector<double> squared_distance_field(const std::vector<std::pair<int, int>>& seeds, int h,
                                           int w) {
    std::vector<double> grid(static_cast<size_t>(h) * w, kInf);
    for (const auto& [y, x] : seeds) grid[static_cast<size_t>(y) * w + x] = 0.0;

    std::vector<double> f(std::max(h, w)), d(std::max(h, w));
    for (int x = 0; x < w; ++x) {
        for (int y = 0; y < h; ++y) f[y] = grid[static_cast<size_t>(y) * w + x];
        dt_1d(f, d, h);
        for (int y = 0; y < h; ++y) grid[static_cast<size_t>(y) * w + x] = d[y];
    }
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) f[x] = grid[static_cast<size_t>(y) * w + x];
        dt_1d(f, d, w);
        for (int x = 0; x < w; ++x) grid[static_cast<size_t>(y) * w + x] = d[x];
    }
    return grid;
}

double mean_boundary_distance(const std::vector<std::pair<int, int>>& from,
                              const std::vector<double>& field_sq, int w) {
    double acc = 0.0;
    for (const auto& [y, x] : from) acc += std::sqrt(field_sq[static_cast<size_t>(y) * w + x]);
    return acc / static_cast<double>(from.size());
}

}  // namespace

std::optional<double> asd(const LabelMask& pred, const LabelMask& gt, int cls) {
    if (!pred.same_shape(gt)) throw InvalidInput("asd: mask shapes differ");
    const auto bp = boundary_pixels(pred, cls);
    const auto bg = boundary_pixels(gt, cls);
    if (bp.empty() || bg.empty()) return std::nullopt;

    const auto field_g = squared_distance_field(bg, pred.height, pred.width);
    const auto field_p = squared_distance_field(bp, pred.height, pred.width);
    const double d_pg = mean_boundary_distance(bp, field_g, pred.width);
    const double d_gp = mean_boundary_distance(bg, field_p, pred.width);
    return 0.5 * (d_pg + d_gp);
}

double histogram_distance(const Image& a, const Image& b, int bins) {
    if (bins < 1) throw InvalidInput("histogram_distance: bins must be positive");
    if (a.channels != b.channels) throw InvalidInput("histogram_distance: channel counts differ");

    auto channel_hist = [bins](const Image& img, int c) {
        std::vector<double> h(bins, 0.0);
        const float* src = img.plane(c);
        for (size_t i = 0; i < img.plane_size(); ++i) {
            const double v = std::clamp(static_cast<double>(src[i]), 0.0, 1.0);
            const int bin = std::min(static_cast<int>(v * bins), bins - 1);
            h[bin] += 1.0;
        }
        for (double& x : h) x /= static_cast<double>(img.plane_size());
        return h;
    };

    double total = 0.0;
    for (int c = 0; c < a.channels; ++c) {
        const auto ha = channel_hist(a, c);
        const auto hb = channel_hist(b, c);
        double l1 = 0.0;
        for (int i = 0; i < bins; ++i) l1 += std::abs(ha[i] - hb[i]);
        total += l1;
    }
    return total / static_cast<double>(a.channels);
}

double style_shift(const Image& a, const Image& b) {
    if (!a.same_shape(b)) throw InvalidInput("style_shift: image shapes differ");
    const auto code_a = decompose(a).style_code();
    const auto code_b = decompose(b).style_code();
    double acc = 0.0;
    for (size_t i = 0; i < code_a.size(); ++i) {
        const double d = code_a[i] - code_b[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

MetricReport evaluate_masks(const LabelMask& pred, const LabelMask& gt, int num_classes) {
    MetricReport report;
    double dsc_sum = 0.0, asd_sum = 0.0;
    int dsc_n = 0, asd_n = 0;
    for (int c = 1; c < num_classes; ++c) {
        MetricReport::ClassMetric cm;
        cm.cls = c;
        cm.dsc = dsc(pred, gt, c);
        cm.asd = asd(pred, gt, c);
        if (cm.dsc) {
            dsc_sum += *cm.dsc;
            ++dsc_n;
        }
        if (cm.asd) {
            asd_sum += *cm.asd;
            ++asd_n;
        }
        report.classes.push_back(cm);
    }
    if (dsc_n > 0) report.mean_dsc = dsc_sum / dsc_n;
    if (asd_n > 0) report.mean_asd = asd_sum / asd_n;
    return report;
}

std::string MetricReport::to_json() const {
    nlohmann::ordered_json j;
    j["classes"] = nlohmann::ordered_json::array();
    for (const auto& cm : classes) {
        nlohmann::ordered_json e;
        e["class"] = cm.cls;
        if (cm.dsc) e["dsc"] = *cm.dsc; else e["dsc"] = "undefined";
        if (cm.asd) e["asd"] = *cm.asd; else e["asd"] = "undefined";
        j["classes"].push_back(e);
    }
    if (mean_dsc) j["mean_dsc"] = *mean_dsc;
    if (mean_asd) j["mean_asd"] = *mean_asd;
    if (histogram_dist) j["histogram_distance"] = *histogram_dist;
    if (style_shift_dist) j["style_shift"] = *style_shift_dist;
    return j.dump(2);
}

}  // namespace stycona
