// Copyright 2026 The StyCona Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stycona/decomposition.hpp"
#include "stycona/image.hpp"
#include "stycona/rng.hpp"

namespace stycona {

/// Scalar sampling policy for the blend weights. lo == hi pins the value,
/// otherwise one uniform draw on [lo, hi) per augmentation.
struct ScalarPolicy {
    double lo = 0.0;
    double hi = 1.0;

    static ScalarPolicy uniform01() { return {0.0, 1.0}; }
    static ScalarPolicy fixed(double v) { return {v, v}; }

    bool is_fixed() const { return lo == hi; }
    double draw(RandomStream& stream) const {
        return is_fixed() ? lo : stream.next_uniform(lo, hi);
    }
};

/// Which singular vector of a selected content map gets mixed.
enum class MixSide : char { Left = 'L', Right = 'R', Both = 'B' };

struct AugmentConfig {
    int t = 16;                     // number of perturbed content maps
    ScalarPolicy alpha = ScalarPolicy::uniform01();  // style blend weight
    ScalarPolicy beta = ScalarPolicy::uniform01();   // content blend weight
    double apply_prob = 0.5;        // chance a batch sample is augmented at all
    bool style = true;              // enable style blending (ablation switch)
    bool content = true;            // enable content mixing (ablation switch)
    bool mix_both_sides = false;    // mix u and v together instead of one side
    bool independent_index_sets = false;  // draw separate index sets for i and j
    bool clamp = true;
    uint64_t seed = 0;

    void validate() const;
};

/// Audit trail of one augmentation: every random draw that shaped the output.
struct AugmentRecord {
    uint64_t sample_index = 0;
    std::optional<uint64_t> aux_index;  // absent when the sample passed through
    bool applied = false;
    double alpha = 1.0;
    double beta = 1.0;
    std::vector<int> indices;      // selected content maps, strictly increasing
    std::vector<int> aux_indices;  // differs from indices only for independent sets
    std::vector<MixSide> sides;    // one flag per selected index

    std::string to_json() const;
    static AugmentRecord from_json(const std::string& line);
};

/// Elementwise alpha * sigma_i + (1 - alpha) * sigma_j. Inputs must be
/// non-increasing and non-negative; the output then is as well.
std::vector<double> style_blend(std::span<const double> sigma_i,
                                std::span<const double> sigma_j, double alpha);

/// For each selected index, replaces the left or right singular vector of f_i
/// by its convex blend with the same-index vector of f_j. Mixed columns are
/// not re-normalized or re-orthogonalized. Untouched columns are identical
/// to f_i.
SvdFactors content_mix(const SvdFactors& f_i, const SvdFactors& f_j,
                       std::span<const int> indices, double beta,
                       std::span<const MixSide> sides);

/// content_mix pairing index_i[m] of f_i with index_j[m] of f_j (the
/// independent-index-sets reading).
SvdFactors content_mix_paired(const SvdFactors& f_i, const SvdFactors& f_j,
                              std::span<const int> indices_i, std::span<const int> indices_j,
                              double beta, std::span<const MixSide> sides);

/// Full StyCona augmentation of x_i against auxiliary image x_j: decompose
/// both, blend style codes, mix selected content maps, reconstruct. The same
/// draws apply to every channel.
std::pair<Image, AugmentRecord> stycona(const Image& x_i, const Image& x_j,
                                        const AugmentConfig& cfg, RandomStream& stream);

/// stycona() on precomputed decompositions (used by the batch/training path
/// to avoid re-running the SVD every epoch). Identical output by construction.
std::pair<Image, AugmentRecord> stycona_decomposed(const StyleContent& sc_i,
                                                   const StyleContent& sc_j,
                                                   const AugmentConfig& cfg,
                                                   RandomStream& stream);

struct AugmentedSample {
    Image image;
    AugmentRecord record;
};

/// Per sample i: with probability cfg.apply_prob, pick uniform j != i and
/// augment; otherwise pass the input through untouched. Sample randomness is
/// keyed by (cfg.seed, i), so the output is independent of thread count.
std::vector<AugmentedSample> augment_batch(std::span<const Image> images,
                                           const AugmentConfig& cfg, int threads = 1);

/// Batch augmentation over cached decompositions. `originals` supplies the
/// pass-through pixels for non-augmented samples.
std::vector<AugmentedSample> augment_batch_decomposed(std::span<const StyleContent> factors,
                                                      std::span<const Image> originals,
                                                      const AugmentConfig& cfg,
                                                      int threads = 1);

void write_records(const std::vector<AugmentedSample>& samples, const std::string& path);

}  // namespace stycona
