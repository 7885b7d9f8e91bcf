/*
 * eyefit - eyelid-aware 3D morphable face model fitting.
 *
 * File: include/eyefit/loss/pairs.hpp
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
#include "eyefit/core/landmarks.hpp"
#include "eyefit/elam/adjust.hpp"

#include <vector>

namespace eyefit::loss {

/// Region a keypoint pair belongs to; decides which width normalizes its gap.
enum class PairRegion
{
    RightEye,
    LeftEye,
    Mouth,
};

/**
 * The set of upper/lower keypoint pairs the local dynamic loss runs over:
 * eyelid pairs per eye plus vertical lip pairs. Each pair carries a 0/1
 * mask weight, so region ablations (mouth only, eyes only) are just weight
 * configurations.
 */
struct PairSet
{
    struct Pair
    {
        int upper;
        int lower;
        PairRegion region;
        double weight = 1.0; // must be exactly 0 or 1
    };

    std::vector<Pair> pairs;

    void validate() const
    {
        for (const Pair& p : pairs) {
            if (p.upper < 0 || p.upper >= kNumLandmarks || p.lower < 0 || p.lower >= kNumLandmarks)
                throw InvalidArgument("PairSet: landmark index out of range");
            if (p.weight != 0.0 && p.weight != 1.0)
                throw InvalidArgument(detail::format_message("PairSet: weight must be exactly 0 or 1, got ", p.weight));
        }
    }

    /// Sets all eyelid-pair weights (the "+mouth only" ablation uses 0 here).
    void set_eye_weights(double w)
    {
        for (Pair& p : pairs)
            if (p.region != PairRegion::Mouth)
                p.weight = w;
    }

    void set_mouth_weights(double w)
    {
        for (Pair& p : pairs)
            if (p.region == PairRegion::Mouth)
                p.weight = w;
    }
};

/**
 * Default pair set: the four eyelid pairs of the given pairing plus six
 * vertical lip pairs (outer 51-59, 52-58, 53-57 and inner 62-68, 63-67,
 * 64-66, 1-based), all with weight 1.
 */
inline PairSet default_pair_set(const elam::EyelidPairing& pairing)
{
    PairSet s;
    for (const auto& p : pairing.right_eye)
        s.pairs.push_back({p.upper, p.lower, PairRegion::RightEye, 1.0});
    for (const auto& p : pairing.left_eye)
        s.pairs.push_back({p.upper, p.lower, PairRegion::LeftEye, 1.0});
    s.pairs.push_back({ibug(51), ibug(59), PairRegion::Mouth, 1.0});
    s.pairs.push_back({ibug(52), ibug(58), PairRegion::Mouth, 1.0});
    s.pairs.push_back({ibug(53), ibug(57), PairRegion::Mouth, 1.0});
    s.pairs.push_back({ibug(62), ibug(68), PairRegion::Mouth, 1.0});
    s.pairs.push_back({ibug(63), ibug(67), PairRegion::Mouth, 1.0});
    s.pairs.push_back({ibug(64), ibug(66), PairRegion::Mouth, 1.0});
    return s;
}

/// Width of the pair's region measured on the given landmark set.
inline double region_scale(const LandmarkSet& landmarks, PairRegion region)
{
    std::array<int, 2> corners{};
    switch (region) {
    case PairRegion::RightEye: corners = eye_corner_indices(true); break;
    case PairRegion::LeftEye: corners = eye_corner_indices(false); break;
    case PairRegion::Mouth: corners = mouth_corner_indices(); break;
    }
    return (landmarks.points[corners[0]] - landmarks.points[corners[1]]).norm();
}

} // namespace eyefit::loss
