// Copyright 2026 The StyCona Authors
// SPDX-License-Identifier: Apache-2.0

#include "stycona/augment.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <thread>

#include <json.hpp>

namespace stycona {

void AugmentConfig::validate() const {
    if (t < 0) throw InvalidInput("AugmentConfig: t must be non-negative");
    if (apply_prob < 0.0 || apply_prob > 1.0) {
        throw InvalidInput("AugmentConfig: apply_prob must be within [0, 1]");
    }
    if (alpha.lo > alpha.hi || alpha.lo < 0.0 || alpha.hi > 1.0) {
        throw InvalidInput("AugmentConfig: alpha policy must satisfy 0 <= lo <= hi <= 1");
    }
    if (beta.lo > beta.hi || beta.lo < 0.0 || beta.hi > 1.0) {
        throw InvalidInput("AugmentConfig: beta policy must satisfy 0 <= lo <= hi <= 1");
    }
}

std::string AugmentRecord::to_json() const {
    nlohmann::ordered_json j;
    j["i"] = sample_index;
    j["applied"] = applied;
    if (applied) {
        j["j"] = *aux_index;
        j["alpha"] = alpha;
        j["beta"] = beta;
        j["t"] = indices.size();
        j["indices"] = indices;
        if (aux_indices != indices) j["aux_indices"] = aux_indices;
        std::string s;
        for (MixSide side : sides) s.push_back(static_cast<char>(side));
        j["sides"] = s;
    }
    return j.dump();
}

AugmentRecord AugmentRecord::from_json(const std::string& line) {
    nlohmann::json j = nlohmann::json::parse(line);
    AugmentRecord rec;
    rec.sample_index = j.at("i").get<uint64_t>();
    rec.applied = j.at("applied").get<bool>();
    if (rec.applied) {
        rec.aux_index = j.at("j").get<uint64_t>();
        rec.alpha = j.at("alpha").get<double>();
        rec.beta = j.at("beta").get<double>();
        rec.indices = j.at("indices").get<std::vector<int>>();
        rec.aux_indices =
            j.contains("aux_indices") ? j.at("aux_indices").get<std::vector<int>>() : rec.indices;
        for (char c : j.at("sides").get<std::string>()) {
            rec.sides.push_back(static_cast<MixSide>(c));
        }
    }
    return rec;
}

std::vector<double> style_blend(std::span<const double> sigma_i,
                                std::span<const double> sigma_j, double alpha) {
    if (sigma_i.size() != sigma_j.size()) {
        throw InvalidInput("style_blend: style code lengths differ");
    }
    if (alpha < 0.0 || alpha > 1.0) throw InvalidInput("style_blend: alpha must be in [0, 1]");
    std::vector<double> out(sigma_i.size());
    for (size_t r = 0; r < out.size(); ++r) {
        out[r] = alpha * sigma_i[r] + (1.0 - alpha) * sigma_j[r];
    }
    return out;
}

namespace {

void blend_column(Matrix& dst, const Matrix& a, const Matrix& b, int col_dst, int col_a,
                  int col_b, double beta) {
    for (int r = 0; r < dst.rows(); ++r) {
        dst(r, col_dst) = beta * a(r, col_a) + (1.0 - beta) * b(r, col_b);
    }
}

}  // namespace

SvdFactors content_mix_paired(const SvdFactors& f_i, const SvdFactors& f_j,
                              std::span<const int> indices_i, std::span<const int> indices_j,
                              double beta, std::span<const MixSide> sides) {
    if (f_i.k() != f_j.k() || f_i.rows() != f_j.rows() || f_i.cols() != f_j.cols()) {
        throw InvalidInput("content_mix: factor dimensions differ");
    }
    if (beta < 0.0 || beta > 1.0) throw InvalidInput("content_mix: beta must be in [0, 1]");
    if (indices_i.size() != indices_j.size() || indices_i.size() != sides.size()) {
        throw InvalidInput("content_mix: index/side list lengths differ");
    }
    SvdFactors out = f_i;
    for (size_t m = 0; m < indices_i.size(); ++m) {
        const int ri = indices_i[m];
        const int rj = indices_j[m];
        if (ri < 0 || ri >= f_i.k() || rj < 0 || rj >= f_j.k()) {
            throw InvalidInput("content_mix: index out of range");
        }
        const MixSide side = sides[m];
        if (side == MixSide::Left || side == MixSide::Both) {
            blend_column(out.u, f_i.u, f_j.u, ri, ri, rj, beta);
        }
        if (side == MixSide::Right || side == MixSide::Both) {
            blend_column(out.v, f_i.v, f_j.v, ri, ri, rj, beta);
        }
    }
    return out;
}

SvdFactors content_mix(const SvdFactors& f_i, const SvdFactors& f_j,
                       std::span<const int> indices, double beta,
                       std::span<const MixSide> sides) {
    return content_mix_paired(f_i, f_j, indices, indices, beta, sides);
}

namespace {

// Draw order is part of the reproducibility contract: alpha, beta, index
// set(s), then one side flag per selected index.
struct Draws {
    double alpha = 1.0;
    double beta = 1.0;
    std::vector<int> indices;
    std::vector<int> aux_indices;
    std::vector<MixSide> sides;
};

Draws make_draws(const AugmentConfig& cfg, int k, RandomStream& stream) {
    Draws d;
    d.alpha = cfg.style ? cfg.alpha.draw(stream) : 1.0;
    d.beta = cfg.content ? cfg.beta.draw(stream) : 1.0;
    if (cfg.content) {
        int t_eff = cfg.t;
        if (t_eff > k) {
            std::fprintf(stderr, "stycona: t=%d exceeds k=%d, clamping down\n", cfg.t, k);
            t_eff = k;
        }
        d.indices = stream.sample_without_replacement(t_eff, k);
        d.aux_indices = cfg.independent_index_sets
                            ? stream.sample_without_replacement(t_eff, k)
                            : d.indices;
        d.sides.reserve(d.indices.size());
        for (size_t m = 0; m < d.indices.size(); ++m) {
            d.sides.push_back(cfg.mix_both_sides
                                  ? MixSide::Both
                                  : (stream.next_coin(0.5) ? MixSide::Left : MixSide::Right));
        }
    }
    return d;
}

Image synthesize(const StyleContent& sc_i, const StyleContent& sc_j, const AugmentConfig& cfg,
                 const Draws& d) {
    Image out = Image::zeros(sc_i.height, sc_i.width, sc_i.channels);
    for (int c = 0; c < sc_i.channels; ++c) {
        const SvdFactors& f_i = sc_i.factors[c];
        const SvdFactors& f_j = sc_j.factors[c];
        SvdFactors mixed =
            cfg.content
                ? content_mix_paired(f_i, f_j, d.indices, d.aux_indices, d.beta, d.sides)
                : f_i;
        if (cfg.style) {
            mixed.sigma = style_blend(f_i.sigma, f_j.sigma, d.alpha);
        }
        set_channel(out, c, reconstruct(mixed), cfg.clamp);
    }
    return out;
}

}  // namespace

std::pair<Image, AugmentRecord> stycona_decomposed(const StyleContent& sc_i,
                                                   const StyleContent& sc_j,
                                                   const AugmentConfig& cfg,
                                                   RandomStream& stream) {
    cfg.validate();
    if (sc_i.height != sc_j.height || sc_i.width != sc_j.width ||
        sc_i.channels != sc_j.channels) {
        throw InvalidInput("stycona: image shapes differ");
    }
    const Draws d = make_draws(cfg, sc_i.k(), stream);
    AugmentRecord rec;
    rec.applied = true;
    rec.alpha = d.alpha;
    rec.beta = d.beta;
    rec.indices = d.indices;
    rec.aux_indices = d.aux_indices;
    rec.sides = d.sides;
    return {synthesize(sc_i, sc_j, cfg, d), std::move(rec)};
}

std::pair<Image, AugmentRecord> stycona(const Image& x_i, const Image& x_j,
                                        const AugmentConfig& cfg, RandomStream& stream) {
    if (!x_i.same_shape(x_j)) throw InvalidInput("stycona: image shapes differ");
    return stycona_decomposed(decompose(x_i), decompose(x_j), cfg, stream);
}

namespace {

template <typename AugmentOne>
std::vector<AugmentedSample> run_batch(size_t n, const AugmentConfig& cfg, int threads,
                                       const AugmentOne& augment_one) {
    cfg.validate();
    if (n < 2) throw InvalidInput("augment_batch: need at least 2 images");
    std::vector<AugmentedSample> out(n);

    auto worker = [&](size_t begin, size_t stride) {
        for (size_t i = begin; i < n; i += stride) {
            RandomStream stream = RandomStream::substream(cfg.seed, i);
            const bool applied = stream.next_coin(cfg.apply_prob);
            if (!applied) {
                out[i].record.sample_index = i;
                out[i].record.applied = false;
                augment_one(i, std::optional<size_t>{}, stream, out[i]);
                continue;
            }
            // Uniform j != i.
            size_t j = static_cast<size_t>(stream.next_below(n - 1));
            if (j >= i) ++j;
            augment_one(i, std::optional<size_t>{j}, stream, out[i]);
            out[i].record.sample_index = i;
            out[i].record.aux_index = j;
        }
    };

    if (threads <= 1) {
        worker(0, 1);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int w = 0; w < threads; ++w) pool.emplace_back(worker, static_cast<size_t>(w), threads);
        for (auto& th : pool) th.join();
    }
    return out;
}

}  // namespace

std::vector<AugmentedSample> augment_batch(std::span<const Image> images,
                                           const AugmentConfig& cfg, int threads) {
    for (size_t i = 1; i < images.size(); ++i) {
        if (!images[i].same_shape(images[0])) {
            throw InvalidInput("augment_batch: heterogeneous image shapes (resize upstream)");
        }
    }
    return run_batch(images.size(), cfg, threads,
                     [&](size_t i, std::optional<size_t> j, RandomStream& stream,
                         AugmentedSample& slot) {
                         if (!j) {
                             slot.image = images[i];
                             return;
                         }
                         auto [img, rec] = stycona(images[i], images[*j], cfg, stream);
                         slot.image = std::move(img);
                         slot.record = std::move(rec);
                     });
}

std::vector<AugmentedSample> augment_batch_decomposed(std::span<const StyleContent> factors,
                                                      std::span<const Image> originals,
                                                      const AugmentConfig& cfg, int threads) {
    if (factors.size() != originals.size()) {
        throw InvalidInput("augment_batch: factor/original counts differ");
    }
    return run_batch(factors.size(), cfg, threads,
                     [&](size_t i, std::optional<size_t> j, RandomStream& stream,
                         AugmentedSample& slot) {
                         if (!j) {
                             slot.image = originals[i];
                             return;
                         }
                         auto [img, rec] = stycona_decomposed(factors[i], factors[*j], cfg, stream);
                         slot.image = std::move(img);
                         slot.record = std::move(rec);
                     });
}

void write_records(const std::vector<AugmentedSample>& samples, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("write_records: cannot open " + path);
    for (const auto& s : samples) out << s.record.to_json() << "\n";
}

}  // namespace stycona
