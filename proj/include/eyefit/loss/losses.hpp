/*
 * eyefit - eyelid-aware 3D morphable face model fitting.
 *
 * File: include/eyefit/loss/losses.hpp
 *
 * Copyright 2026 The eyefit authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include "eyefit/core/error.hpp"
#include "eyefit/core/image.hpp"
#include "eyefit/core/landmarks.hpp"
#include "eyefit/loss/embedding.hpp"
#include "eyefit/loss/pairs.hpp"
#include "eyefit/render/rasterize.hpp"

#include <Eigen/Core>

#include <cmath>
#include <vector>

namespace eyefit::loss {

/// Weights of the total objective. Defaults follow the standard recipe:
/// dynamic 0.5, image (photo + landmark) 1.8, perceptual 0.17.
struct LossWeights
{
    double w_dyn = 0.5;
    double w_img = 1.8;
    double w_per = 0.17;
};

/// Per-term loss values plus their weighted combination.
struct LossBreakdown
{
    double ldl = 0.0;
    double photo = 0.0;
    double landmark = 0.0;
    double perceptual = 0.0;
    double total = 0.0;
    LossWeights weights;
};

/// Bookkeeping for degenerate cases that contribute zero instead of failing.
struct LossFlags
{
    std::vector<int> degenerate_pairs; // LDL pairs with region width < 1e-6 px
    bool empty_attention = false;      // photo loss had sum(A) == 0
};

/**
 * Local dynamic loss: L1 distance between region-relative vertical gaps of
 * predicted and observed keypoint pairs,
 *
 *   LDL = sum_k w_k | D(l_k) - D(L_k) |,
 *   D   = |y_upper - y_lower| / region_width,
 *
 * where region_width is the OBSERVED eye width (eyelid pairs) or mouth
 * width (lip pairs). Normalizing by the observed region width makes the
 * loss invariant to uniform translation and scaling of the landmarks, in
 * contrast to the absolute landmark term below. Pairs whose region width
 * degenerates (< 1e-6 px) contribute zero and are flagged.
 */
inline double local_dynamic_loss(const LandmarkSet& predicted, const LandmarkSet& observed, const PairSet& pairs,
                                 LossFlags* flags = nullptr)
{
    pairs.validate();
    double total = 0.0;
    for (std::size_t k = 0; k < pairs.pairs.size(); ++k) {
        const PairSet::Pair& pair = pairs.pairs[k];
        if (pair.weight == 0.0)
            continue;
        const double scale = region_scale(observed, pair.region);
        if (scale < 1e-6) {
            if (flags)
                flags->degenerate_pairs.push_back(static_cast<int>(k));
            continue;
        }
        const double d_pred = std::abs(predicted.points[pair.upper].y() - predicted.points[pair.lower].y()) / scale;
        const double d_obs = std::abs(observed.points[pair.upper].y() - observed.points[pair.lower].y()) / scale;
        total += pair.weight * std::abs(d_pred - d_obs);
    }
    return total;
}

/**
 * Attention-weighted photometric loss over the rendered face region:
 *   sum_{i in M} A_i ||I_i - I'_i||_2 / sum_{i in M} A_i
 * with the per-pixel L2 norm taken over RGB. Returns 0 (with a flag) when
 * the attention mass is zero.
 */
inline double photo_loss(const Image& image, const render::RenderOutput& rendered, LossFlags* flags = nullptr)
{
    if (image.width != rendered.width || image.height != rendered.height)
        throw InvalidArgument(detail::format_message("photo_loss: image is ", image.width, "x", image.height,
                                                     " but render is ", rendered.width, "x", rendered.height));
    double weighted = 0.0;
    double attention_mass = 0.0;
    for (int y = 0; y < image.height; ++y) {
        for (int x = 0; x < image.width; ++x) {
            const std::size_t idx = rendered.index(x, y);
            if (!rendered.mask[idx])
                continue;
            const double a = rendered.attention[idx];
            double d2 = 0.0;
            for (int c = 0; c < 3; ++c) {
                const double diff = image.at(x, y, c) - rendered.color.at(x, y, c);
                d2 += diff * diff;
            }
            weighted += a * std::sqrt(d2);
            attention_mass += a;
        }
    }
    if (attention_mass == 0.0) {
        if (flags)
            flags->empty_attention = true;
        return 0.0;
    }
    return weighted / attention_mass;
}

/**
 * Absolute landmark loss: sum_n w_n (|dx_n| + |dy_n|) / 68. The division
 * by the point count keeps the image weight comparable across image sizes.
 * Invalid observed points are skipped (the normalization stays 68).
 */
inline double landmark_loss(const std::array<Eigen::Vector2d, kNumLandmarks>& predicted,
                            const LandmarkSet& observed)
{
    double total = 0.0;
    for (int n = 0; n < kNumLandmarks; ++n) {
        if (!observed.valid[n])
            continue;
        const Eigen::Vector2d d = predicted[n] - observed.points[n];
        total += observed.weights[n] * (std::abs(d.x()) + std::abs(d.y()));
    }
    return total / kNumLandmarks;
}

/**
 * Perceptual loss: one minus the cosine similarity of the two embeddings,
 * in [0, 2]. Both images are embedded with the same provider and the same
 * mask so identical images always score 0.
 */
inline double perceptual_loss(const Image& image, const Image& rendered, const EmbeddingProvider& provider,
                              const std::vector<std::uint8_t>* mask = nullptr)
{
    const Eigen::VectorXd f1 = provider.embed(image, mask);
    const Eigen::VectorXd f2 = provider.embed(rendered, mask);
    const double n1 = f1.norm(), n2 = f2.norm();
    if (n1 == 0.0 || n2 == 0.0)
        throw Error("perceptual_loss: embedding provider '" + provider.name() + "' returned a zero-norm vector");
    return 1.0 - f1.dot(f2) / (n1 * n2);
}

/// Weighted combination: total = w_dyn*ldl + w_img*(photo + landmark) + w_per*perceptual.
inline LossBreakdown combine_losses(double ldl, double photo, double landmark, double perceptual,
                                    const LossWeights& weights)
{
    LossBreakdown b;
    b.ldl = ldl;
    b.photo = photo;
    b.landmark = landmark;
    b.perceptual = perceptual;
    b.weights = weights;
    b.total = weights.w_dyn * ldl + weights.w_img * (photo + landmark) + weights.w_per * perceptual;
    return b;
}

} // namespace eyefit::loss
